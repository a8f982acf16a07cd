#include "acc/datasets.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace acc {

Dataset GenerateSynthetic(const SyntheticSpec& spec) {
  if (spec.clusters == 0 || spec.clusters > spec.n) {
    throw std::invalid_argument("need 1 <= clusters <= n");
  }
  if (spec.dims == 0) throw std::invalid_argument("dims must be positive");
  Rng rng(spec.seed);
  std::uniform_real_distribution<double> mean_dist(0.0, spec.separation);
  std::normal_distribution<double> noise(0.0, 1.0);

  Matrix means(spec.clusters, spec.dims);
  for (double& m : means.data) m = mean_dist(rng);

  Dataset out;
  out.features = Matrix(spec.n, spec.dims);
  out.labels.reserve(spec.n);
  const std::size_t base = spec.n / spec.clusters;
  const std::size_t extra = spec.n % spec.clusters;
  for (std::size_t c = 0; c < spec.clusters; ++c) {
    const std::size_t size = base + (c < extra ? 1 : 0);
    for (std::size_t s = 0; s < size; ++s) {
      const std::size_t i = out.labels.size();
      out.labels.push_back(static_cast<int>(c));
      auto row = out.features.row(i);
      const auto mean = means.row(c);
      for (std::size_t d = 0; d < spec.dims; ++d) row[d] = mean[d] + noise(rng);
    }
  }
  return out;
}

namespace {

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

}  // namespace

Clustering KmeansInit(const Matrix& features, std::size_t k, Rng& rng) {
  const std::size_t n = features.rows;
  if (k == 0 || k > n) throw std::invalid_argument("need 1 <= k <= N");

  Matrix centers(k, features.cols);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<bool> chosen(n, false);
  auto add_center = [&](std::size_t c, std::size_t point) {
    chosen[point] = true;
    std::copy_n(features.row(point).begin(), features.cols,
                centers.row(c).begin());
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] =
          std::min(nearest[i], SquaredDistance(features.row(i), centers.row(c)));
    }
  };
  // Greedy k-means++: each step draws several D^2-weighted candidates and
  // keeps the one that lowers the potential most.
  const std::size_t trials =
      2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
  add_center(0, UniformIndex(rng, n));
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += nearest[i];
    if (total <= 0.0) {
      // All remaining points coincide with a center.
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) free.push_back(i);
      }
      add_center(c, free[UniformIndex(rng, free.size())]);
      continue;
    }
    std::size_t pick = n;
    double best_potential = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
      double target = UniformUnit(rng) * total;
      std::size_t candidate = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (nearest[i] <= 0.0) continue;
        candidate = i;
        target -= nearest[i];
        if (target < 0.0) break;
      }
      double potential = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        potential += std::min(
            nearest[i], SquaredDistance(features.row(i), features.row(candidate)));
      }
      if (potential < best_potential) {
        best_potential = potential;
        pick = candidate;
      }
    }
    add_center(c, pick);
  }

  std::vector<int> labels(n, 0);
  std::vector<std::size_t> counts(k);
  Matrix sums(k, features.cols);
  for (int iteration = 0; iteration < 300; ++iteration) {
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = SquaredDistance(features.row(i), centers.row(c));
        if (d < best) {
          best = d;
          labels[i] = static_cast<int>(c);
        }
      }
    }
    std::fill(counts.begin(), counts.end(), 0);
    std::fill(sums.data.begin(), sums.data.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[labels[i]];
      auto s = sums.row(labels[i]);
      const auto x = features.row(i);
      for (std::size_t d = 0; d < features.cols; ++d) s[d] += x[d];
    }
    double max_shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // empty clusters keep their center
      auto center = centers.row(c);
      double shift = 0.0;
      for (std::size_t d = 0; d < features.cols; ++d) {
        const double updated = sums.row(c)[d] / counts[c];
        shift += (updated - center[d]) * (updated - center[d]);
        center[d] = updated;
      }
      max_shift = std::max(max_shift, std::sqrt(shift));
    }
    if (max_shift <= 1e-6) break;
  }
  return Clustering(labels);
}

Matrix ParseFeatures(std::istream& in) {
  Matrix m;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) {
          throw std::invalid_argument(cell);
        }
      } catch (const std::exception&) {
        throw std::runtime_error("features line " +
                                 std::to_string(line_number) +
                                 ": not a number: '" + cell + "'");
      }
    }
    if (m.rows == 0) {
      m.cols = row.size();
    } else if (row.size() != m.cols) {
      throw std::runtime_error("features line " + std::to_string(line_number) +
                               ": expected " + std::to_string(m.cols) +
                               " columns");
    }
    m.data.insert(m.data.end(), row.begin(), row.end());
    ++m.rows;
  }
  return m;
}

Matrix ReadFeaturesFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open features file " + path);
  return ParseFeatures(in);
}

}  // namespace acc
