#include "acc/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace acc {

ContingencyTable::ContingencyTable(const Clustering& a, const Clustering& b)
    : counts_(a.num_clusters() * b.num_clusters(), 0),
      row_sums_(a.num_clusters(), 0),
      col_sums_(b.num_clusters(), 0),
      total_(a.size()) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("clusterings cover different object sets");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto r = static_cast<std::size_t>(a.label(i));
    const auto c = static_cast<std::size_t>(b.label(i));
    ++counts_[r * cols() + c];
    ++row_sums_[r];
    ++col_sums_[c];
  }
}

namespace {

double Choose2(std::uint64_t n) { return 0.5 * n * (n - 1.0); }

double Entropy(const std::vector<std::uint64_t>& sizes, double n) {
  double h = 0.0;
  for (auto s : sizes) {
    if (s > 0) h -= (s / n) * std::log(s / n);
  }
  return h;
}

}  // namespace

double AdjustedRandIndex(const Clustering& a, const Clustering& b) {
  const ContingencyTable table(a, b);
  double index = 0.0;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t j = 0; j < table.cols(); ++j) {
      index += Choose2(table.count(i, j));
    }
  }
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (auto s : table.row_sums()) sum_a += Choose2(s);
  for (auto s : table.col_sums()) sum_b += Choose2(s);
  const double pairs = Choose2(table.total());
  const double expected = pairs > 0.0 ? sum_a * sum_b / pairs : 0.0;
  const double max_index = 0.5 * (sum_a + sum_b);
  // Zero only when both partitions are the same trivial partition.
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

double AdjustedMutualInformation(const Clustering& a, const Clustering& b) {
  const ContingencyTable table(a, b);
  const std::uint64_t total = table.total();
  if (total == 0) return 1.0;
  if (a == b) return 1.0;
  const double n = static_cast<double>(total);

  double mi = 0.0;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t j = 0; j < table.cols(); ++j) {
      const double nij = static_cast<double>(table.count(i, j));
      if (nij > 0) {
        mi += (nij / n) * std::log(n * nij / (static_cast<double>(
                                                  table.row_sums()[i]) *
                                              table.col_sums()[j]));
      }
    }
  }

  // log(k!) for k = 0..total.
  std::vector<double> log_factorial(total + 1, 0.0);
  for (std::uint64_t k = 2; k <= total; ++k) {
    log_factorial[k] = log_factorial[k - 1] + std::log(static_cast<double>(k));
  }
  double emi = 0.0;
  for (std::uint64_t ai : table.row_sums()) {
    for (std::uint64_t bj : table.col_sums()) {
      const std::uint64_t lo = ai + bj > total ? ai + bj - total : 1;
      const std::uint64_t hi = std::min(ai, bj);
      const double fixed = log_factorial[ai] + log_factorial[bj] +
                           log_factorial[total - ai] +
                           log_factorial[total - bj] - log_factorial[total];
      for (std::uint64_t nij = std::max<std::uint64_t>(lo, 1); nij <= hi;
           ++nij) {
        const double log_p = fixed - log_factorial[nij] -
                             log_factorial[ai - nij] -
                             log_factorial[bj - nij] -
                             log_factorial[total - ai - bj + nij];
        const double term =
            (nij / n) *
            std::log(n * nij / (static_cast<double>(ai) * static_cast<double>(bj)));
        emi += term * std::exp(log_p);
      }
    }
  }

  const double h_max =
      std::max(Entropy(table.row_sums(), n), Entropy(table.col_sums(), n));
  const double denominator = h_max - emi;
  if (std::abs(denominator) < 1e-15) return 0.0;
  return (mi - emi) / denominator;
}

double AreaUnderCurve(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("x and y must have the same length");
  }
  if (x.size() < 2) throw std::invalid_argument("need at least 2 points");
  const double span = x.back() - x.front();
  if (!(span > 0.0)) throw std::invalid_argument("x span must be positive");
  double area = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] < x[i - 1]) throw std::invalid_argument("x must be sorted");
    area += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  }
  return area / span;
}

}  // namespace acc
