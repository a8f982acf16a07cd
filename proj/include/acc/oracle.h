#ifndef ACC_ORACLE_H_
#define ACC_ORACLE_H_

// Ground-truth similarities and the non-persistent noisy oracle.

#include <istream>
#include <string>
#include <vector>

#include "acc/graph.h"
#include "acc/rng.h"

namespace acc {

// Class labels and the similarities they induce: +1 within a class, -1
// across classes.
class GroundTruth {
 public:
  explicit GroundTruth(std::vector<int> labels);

  std::size_t num_objects() const { return labels_.size(); }
  const std::vector<int>& labels() const { return labels_; }
  double SigmaStar(Edge e) const {
    return labels_[e.u] == labels_[e.v] ? 1.0 : -1.0;
  }
  const Clustering& clustering() const { return clustering_; }

 private:
  std::vector<int> labels_;
  Clustering clustering_;
};

struct NoiseModel {
  // Probability that a response is replaced by noise.
  double gamma = 0.0;
  // Noise magnitudes lie in (lambda, 1], i.e. never below the seed magnitude.
  double lambda = 0.1;

  void Validate() const;
};

// With probability 1 - gamma returns sigma*(e). Otherwise returns a uniform
// draw from [-1, -lambda) U (lambda, 1]. Each call draws fresh noise.
double QueryOracle(const GroundTruth& truth, const NoiseModel& noise, Edge e,
                   Rng& rng);

// One integer class id per line; line i is object i. Blank lines are skipped.
std::vector<int> ParseLabels(std::istream& in);
std::vector<int> ReadLabelsFile(const std::string& path);

}  // namespace acc

#endif  // ACC_ORACLE_H_
