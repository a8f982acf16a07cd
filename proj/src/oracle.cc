#include "acc/oracle.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace acc {

GroundTruth::GroundTruth(std::vector<int> labels)
    : labels_(std::move(labels)), clustering_(labels_) {
  if (labels_.size() < 2) {
    throw std::invalid_argument("ground truth needs at least 2 objects");
  }
}

void NoiseModel::Validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1]");
  }
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("lambda must lie in [0, 1)");
  }
}

double QueryOracle(const GroundTruth& truth, const NoiseModel& noise, Edge e,
                   Rng& rng) {
  if (noise.gamma <= 0.0 || UniformUnit(rng) >= noise.gamma) {
    return truth.SigmaStar(e);
  }
  // Both half-intervals have length 1 - lambda, so pick a side by a fair coin
  // and a magnitude uniformly in (lambda, 1].
  const double magnitude = 1.0 - (1.0 - noise.lambda) * UniformUnit(rng);
  return UniformUnit(rng) < 0.5 ? -magnitude : magnitude;
}

std::vector<int> ParseLabels(std::istream& in) {
  std::vector<int> labels;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    int label = 0;
    std::string rest;
    if (!(fields >> label) || (fields >> rest) || label < 0) {
      throw std::runtime_error("labels line " + std::to_string(line_number) +
                               ": expected one non-negative integer");
    }
    labels.push_back(label);
  }
  return labels;
}

std::vector<int> ReadLabelsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open labels file " + path);
  return ParseLabels(in);
}

}  // namespace acc
