#include "acc/baselines.h"

#include <vector>

namespace acc {

QeccResult RunQecc(const GroundTruth& truth, const NoiseModel& noise,
                   std::uint64_t budget, Rng& rng) {
  noise.Validate();
  const std::size_t n = truth.num_objects();
  std::vector<int> labels(n, -1);
  std::vector<ObjectId> unclustered(n);
  for (std::size_t i = 0; i < n; ++i) unclustered[i] = static_cast<ObjectId>(i);

  std::uint64_t used = 0;
  int next_label = 0;
  while (!unclustered.empty() && used < budget) {
    const std::size_t p = UniformIndex(rng, unclustered.size());
    const ObjectId pivot = unclustered[p];
    unclustered[p] = unclustered.back();
    unclustered.pop_back();

    const int label = next_label++;
    labels[pivot] = label;
    std::vector<ObjectId> rest;
    rest.reserve(unclustered.size());
    for (std::size_t i = 0; i < unclustered.size(); ++i) {
      const ObjectId other = unclustered[i];
      if (used >= budget) {
        rest.insert(rest.end(), unclustered.begin() + i, unclustered.end());
        break;
      }
      ++used;
      if (QueryOracle(truth, noise, Edge::Make(pivot, other), rng) >= 0.0) {
        labels[other] = label;
      } else {
        rest.push_back(other);
      }
    }
    unclustered.swap(rest);
  }
  for (ObjectId o : unclustered) labels[o] = next_label++;
  return {Clustering(labels), used};
}

}  // namespace acc
