#ifndef ACC_BASELINES_H_
#define ACC_BASELINES_H_

#include <cstdint>

#include "acc/graph.h"
#include "acc/oracle.h"
#include "acc/rng.h"

namespace acc {

struct QeccResult {
  Clustering clustering;
  std::uint64_t queries_used = 0;
};

// Pivot-based query-efficient correlation clustering under a query budget.
// A uniformly chosen unclustered pivot is queried against every other
// unclustered object and absorbs those answering >= 0. When the budget runs
// out mid-pivot, the pivot keeps the objects found so far and everything
// still unclustered becomes a singleton.
QeccResult RunQecc(const GroundTruth& truth, const NoiseModel& noise,
                   std::uint64_t budget, Rng& rng);

}  // namespace acc

#endif  // ACC_BASELINES_H_
