#ifndef ACC_HARNESS_H_
#define ACC_HARNESS_H_

// Experiment sweeps: a JSON config names a dataset, strategies and parameter
// grids; every grid point x strategy x repetition becomes one seeded run.
//
// Output files in the output directory:
//   results.csv  one row per (run, iteration), deterministic for a seed
//   timings.csv  wall-clock solver/strategy milliseconds per (run, iteration)
//   summary.csv  AUC and final-ARI mean/std per (strategy, grid point)

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "acc/active_loop.h"
#include "acc/datasets.h"
#include "acc/strategies.h"

namespace acc {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error("config key '" + key + "': " + message),
        key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

inline constexpr const char* kQeccName = "qecc";

struct DatasetSource {
  enum class Kind { kSynthetic, kFiles };
  Kind kind = Kind::kSynthetic;
  SyntheticSpec synthetic;
  std::string labels_path;
  std::string features_path;
};

struct GridPoint {
  double gamma = 0.2;
  // Zero means ceil(|E| / 1000).
  std::size_t batch_size = 0;
  double epsilon = 0.3;
  std::uint32_t tau = 5;
  double beta = 1.0;
  Subsample subsample;
};

struct ExperimentConfig {
  DatasetSource dataset;
  // Strategy names, plus "qecc" for the pivot baseline.
  std::vector<std::string> strategies{"uniform", "uncertainty", "frequency",
                                      "maxmin", "maxexp"};
  std::vector<double> gammas{0.2};
  std::vector<std::size_t> batch_sizes{0};
  std::vector<double> epsilons{0.3};
  std::vector<std::uint32_t> taus{5};
  std::vector<double> betas{1.0};
  std::vector<Subsample> subsamples{Subsample::Objects()};
  std::size_t repetitions = 15;
  std::uint64_t seed = 0;
  // Budget per run: max_queries if set, else budget_factor * |E|.
  std::uint64_t max_queries = 0;
  double budget_factor = 1.0;
  InitMode init = InitMode::kRandomClustering;
  std::size_t init_clusters = 10;
  double lambda = 0.1;
  bool seed_in_average = false;
  SolverConfig solver;
  // QECC is rerun at every stride-th budget checkpoint (plus the last).
  std::size_t qecc_stride = 1;
  std::string output_dir = "results";
};

ExperimentConfig ParseExperimentConfig(const std::string& json_text);
ExperimentConfig LoadExperimentConfig(const std::string& path);

struct LoadedDataset {
  GroundTruth truth;
  std::optional<Matrix> features;
};

LoadedDataset LoadDataset(const DatasetSource& source);

struct RunSpec {
  std::size_t run_id = 0;
  std::string strategy;
  GridPoint point;
  std::size_t repetition = 0;
  std::uint64_t run_seed = 0;
};

// Runs ordered by grid point, then strategy, then repetition. Runs of the same
// repetition share a seed, hence the same initial clustering.
std::vector<RunSpec> ExpandRuns(const ExperimentConfig& config);

std::uint64_t RunBudget(const ExperimentConfig& config, std::size_t num_objects);
LoopConfig MakeLoopConfig(const ExperimentConfig& config, const RunSpec& run,
                          std::size_t num_objects);

struct RunOutput {
  RunSpec spec;
  std::size_t batch_size = 0;
  std::vector<ExperimentRecord> records;
};

// For "qecc" the records are budget checkpoints 0, B, 2B, ... and cost and
// violation_count are measured against the ground-truth similarities.
RunOutput ExecuteRun(const ExperimentConfig& config,
                     const LoadedDataset& dataset, const RunSpec& run);

struct SummaryRow {
  std::string strategy;
  GridPoint point;
  std::size_t batch_size = 0;
  std::size_t runs = 0;
  double auc_ari_mean = 0.0;
  double auc_ari_std = 0.0;
  double auc_ami_mean = 0.0;
  double auc_ami_std = 0.0;
  double final_ari_mean = 0.0;
  double final_ari_std = 0.0;
};

std::vector<SummaryRow> Summarize(const std::vector<RunOutput>& runs);

extern const char* const kResultsHeader;
extern const char* const kTimingsHeader;
extern const char* const kSummaryHeader;

void WriteResultRows(std::ostream& out, const RunOutput& run,
                     std::uint64_t master_seed);
void WriteTimingRows(std::ostream& out, const RunOutput& run);
void WriteSummary(std::ostream& out, const std::vector<SummaryRow>& rows);

struct SweepOptions {
  int threads = 1;
  std::ostream* log = nullptr;
};

// Runs the whole sweep and writes the three CSV files under `output_dir`.
// Rows are written in run order and flushed as each run completes.
std::vector<RunOutput> RunExperiment(const ExperimentConfig& config,
                                     const std::string& output_dir,
                                     const SweepOptions& options = {});

}  // namespace acc

#endif  // ACC_HARNESS_H_
