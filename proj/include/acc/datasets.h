#ifndef ACC_DATASETS_H_
#define ACC_DATASETS_H_

// Synthetic Gaussian-blob data, label/feature file ingestion and k-means++
// used to build an informed initial clustering.

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "acc/graph.h"
#include "acc/rng.h"

namespace acc {

// Dense row-major matrix, one row per object.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }
};

struct SyntheticSpec {
  std::size_t n = 500;
  std::size_t dims = 10;
  std::size_t clusters = 10;
  // Component means are drawn uniformly from [0, separation]^dims; samples
  // have unit variance.
  double separation = 4.0;
  std::uint64_t seed = 0;
};

struct Dataset {
  std::vector<int> labels;
  Matrix features;
};

// Classes are contiguous blocks of near-equal size; the first n % clusters
// classes get one extra object.
Dataset GenerateSynthetic(const SyntheticSpec& spec);

// Greedy k-means++ seeding followed by Lloyd iterations until no center moves more
// than 1e-6 (at most 300 iterations).
Clustering KmeansInit(const Matrix& features, std::size_t k, Rng& rng);

// Numeric CSV without header, row i = object i.
Matrix ParseFeatures(std::istream& in);
Matrix ReadFeaturesFile(const std::string& path);

}  // namespace acc

#endif  // ACC_DATASETS_H_
