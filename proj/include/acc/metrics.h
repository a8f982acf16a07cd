#ifndef ACC_METRICS_H_
#define ACC_METRICS_H_

// Partition agreement (ARI, AMI) and the area-under-curve summary of an
// active learning run.

#include <cstdint>
#include <span>
#include <vector>

#include "acc/graph.h"

namespace acc {

class ContingencyTable {
 public:
  ContingencyTable(const Clustering& a, const Clustering& b);

  std::size_t rows() const { return row_sums_.size(); }
  std::size_t cols() const { return col_sums_.size(); }
  std::uint64_t count(std::size_t i, std::size_t j) const {
    return counts_[i * cols() + j];
  }
  const std::vector<std::uint64_t>& row_sums() const { return row_sums_; }
  const std::vector<std::uint64_t>& col_sums() const { return col_sums_; }
  std::uint64_t total() const { return total_; }

 private:
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> row_sums_;
  std::vector<std::uint64_t> col_sums_;
  std::uint64_t total_ = 0;
};

// Hubert-Arabie adjusted Rand index. Two identical trivial partitions (both
// all-in-one or both all-singletons) score 1.
double AdjustedRandIndex(const Clustering& a, const Clustering& b);

// Adjusted mutual information with the expected mutual information under the
// permutation model and max(H(a), H(b)) normalization. Natural logarithms.
double AdjustedMutualInformation(const Clustering& a, const Clustering& b);

// Trapezoidal area of values over x, divided by the x span so that a constant
// curve m has area m. x must be non-decreasing with a positive span.
double AreaUnderCurve(std::span<const double> x, std::span<const double> y);

}  // namespace acc

#endif  // ACC_METRICS_H_
