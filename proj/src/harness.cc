#include "acc/harness.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "acc/baselines.h"
#include "acc/metrics.h"
#include "acc/triangles.h"
#include "json.hpp"

namespace acc {

using nlohmann::json;

namespace {

std::string Join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void RejectUnknownKeys(const json& object, const std::string& path,
                       const std::set<std::string>& allowed) {
  if (!object.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) throw ConfigError(Join(path, key), "unknown key");
  }
}

double GetNumber(const json& value, const std::string& key) {
  if (!value.is_number()) throw ConfigError(key, "expected a number");
  return value.get<double>();
}

std::uint64_t GetCount(const json& value, const std::string& key) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw ConfigError(key, "expected a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

double GetUnitInterval(const json& value, const std::string& key) {
  const double x = GetNumber(value, key);
  if (!(x >= 0.0 && x <= 1.0)) throw ConfigError(key, "must lie in [0, 1]");
  return x;
}

bool IsInfinity(const json& value) {
  return value.is_string() &&
         (value.get<std::string>() == "inf" || value.get<std::string>() == "∞");
}

std::uint32_t GetTau(const json& value, const std::string& key) {
  if (IsInfinity(value)) return kUnlimitedQueries;
  const std::uint64_t tau = GetCount(value, key);
  if (tau < 1 || tau >= kUnlimitedQueries) {
    throw ConfigError(key, "must be a positive integer or \"inf\"");
  }
  return static_cast<std::uint32_t>(tau);
}

double GetBeta(const json& value, const std::string& key) {
  if (IsInfinity(value)) return kInfiniteBeta;
  const double beta = GetNumber(value, key);
  if (!(beta >= 0.0)) throw ConfigError(key, "must be >= 0 or \"inf\"");
  return beta;
}

Subsample GetSubsample(const json& value, const std::string& key) {
  if (value.is_string() && value.get<std::string>() == "n") {
    return Subsample::Objects();
  }
  if (value.is_object()) {
    RejectUnknownKeys(value, key, {"count"});
    if (!value.contains("count")) throw ConfigError(key, "expected {\"count\": k}");
    return Subsample::Count(GetCount(value["count"], Join(key, "count")));
  }
  return Subsample::Fraction(GetUnitInterval(value, key));
}

// Grid entries accept a scalar or a non-empty list.
template <typename T, typename Fn>
std::vector<T> GetList(const json& value, const std::string& key, Fn parse) {
  std::vector<T> out;
  if (value.is_array()) {
    if (value.empty()) throw ConfigError(key, "list must not be empty");
    for (std::size_t i = 0; i < value.size(); ++i) {
      out.push_back(parse(value[i], key + "[" + std::to_string(i) + "]"));
    }
  } else {
    out.push_back(parse(value, key));
  }
  return out;
}

DatasetSource ParseDataset(const json& d) {
  DatasetSource source;
  RejectUnknownKeys(d, "dataset",
                    {"kind", "n", "dims", "clusters", "separation", "seed",
                     "labels", "features"});
  const std::string kind = d.value("kind", std::string("synthetic"));
  if (kind == "synthetic") {
    source.kind = DatasetSource::Kind::kSynthetic;
    auto& s = source.synthetic;
    if (d.contains("n")) s.n = GetCount(d["n"], "dataset.n");
    if (d.contains("dims")) s.dims = GetCount(d["dims"], "dataset.dims");
    if (d.contains("clusters")) {
      s.clusters = GetCount(d["clusters"], "dataset.clusters");
    }
    if (d.contains("separation")) {
      s.separation = GetNumber(d["separation"], "dataset.separation");
    }
    if (d.contains("seed")) s.seed = GetCount(d["seed"], "dataset.seed");
    if (s.n < 2) throw ConfigError("dataset.n", "need at least 2 objects");
    if (s.dims < 1) throw ConfigError("dataset.dims", "must be positive");
    if (s.clusters < 1 || s.clusters > s.n) {
      throw ConfigError("dataset.clusters", "need 1 <= clusters <= n");
    }
    if (!(s.separation > 0.0)) {
      throw ConfigError("dataset.separation", "must be positive");
    }
  } else if (kind == "files") {
    source.kind = DatasetSource::Kind::kFiles;
    if (!d.contains("labels") || !d["labels"].is_string()) {
      throw ConfigError("dataset.labels", "expected a file path");
    }
    source.labels_path = d["labels"].get<std::string>();
    if (d.contains("features")) {
      if (!d["features"].is_string()) {
        throw ConfigError("dataset.features", "expected a file path");
      }
      source.features_path = d["features"].get<std::string>();
    }
  } else {
    throw ConfigError("dataset.kind", "expected \"synthetic\" or \"files\"");
  }
  return source;
}

std::string FormatDouble(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", x);
  return buffer;
}

std::string FormatTau(std::uint32_t tau) {
  return tau == kUnlimitedQueries ? "inf" : std::to_string(tau);
}

double SampleStd(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double Mean(const std::vector<double>& xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  return xs.empty() ? 0.0 : total / static_cast<double>(xs.size());
}

}  // namespace

ExperimentConfig ParseExperimentConfig(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  RejectUnknownKeys(root, "",
                    {"dataset", "strategies", "grid", "repetitions", "seed",
                     "max_queries", "budget_factor", "init", "init_clusters",
                     "lambda", "seed_in_average", "solver", "qecc_stride",
                     "output"});
  ExperimentConfig config;
  if (root.contains("dataset")) config.dataset = ParseDataset(root["dataset"]);

  if (root.contains("strategies")) {
    config.strategies = GetList<std::string>(
        root["strategies"], "strategies", [](const json& v, const std::string& key) {
          if (!v.is_string()) throw ConfigError(key, "expected a strategy name");
          const std::string name = v.get<std::string>();
          if (name != kQeccName && !ParseStrategyKind(name)) {
            throw ConfigError(key, "unknown strategy '" + name + "'");
          }
          return name;
        });
  }

  if (root.contains("grid")) {
    const json& g = root["grid"];
    RejectUnknownKeys(g, "grid",
                      {"gamma", "batch_size", "epsilon", "tau", "beta", "xi"});
    if (g.contains("gamma")) {
      config.gammas = GetList<double>(g["gamma"], "grid.gamma", GetUnitInterval);
    }
    if (g.contains("batch_size")) {
      config.batch_sizes = GetList<std::size_t>(
          g["batch_size"], "grid.batch_size",
          [](const json& v, const std::string& key) {
            return static_cast<std::size_t>(GetCount(v, key));
          });
    }
    if (g.contains("epsilon")) {
      config.epsilons =
          GetList<double>(g["epsilon"], "grid.epsilon", GetUnitInterval);
    }
    if (g.contains("tau")) {
      config.taus = GetList<std::uint32_t>(g["tau"], "grid.tau", GetTau);
    }
    if (g.contains("beta")) {
      config.betas = GetList<double>(g["beta"], "grid.beta", GetBeta);
    }
    if (g.contains("xi")) {
      config.subsamples = GetList<Subsample>(g["xi"], "grid.xi", GetSubsample);
    }
  }

  if (root.contains("repetitions")) {
    config.repetitions = GetCount(root["repetitions"], "repetitions");
    if (config.repetitions < 1) throw ConfigError("repetitions", "must be >= 1");
  }
  if (root.contains("seed")) config.seed = GetCount(root["seed"], "seed");
  if (root.contains("max_queries")) {
    config.max_queries = GetCount(root["max_queries"], "max_queries");
  }
  if (root.contains("budget_factor")) {
    config.budget_factor = GetNumber(root["budget_factor"], "budget_factor");
    if (!(config.budget_factor > 0.0)) {
      throw ConfigError("budget_factor", "must be positive");
    }
  }
  if (root.contains("init")) {
    const json& v = root["init"];
    if (v == "random") {
      config.init = InitMode::kRandomClustering;
    } else if (v == "kmeans") {
      config.init = InitMode::kKmeansClustering;
    } else {
      throw ConfigError("init", "expected \"random\" or \"kmeans\"");
    }
  }
  if (root.contains("init_clusters")) {
    config.init_clusters = GetCount(root["init_clusters"], "init_clusters");
    if (config.init_clusters < 1) {
      throw ConfigError("init_clusters", "must be positive");
    }
  }
  if (root.contains("lambda")) {
    config.lambda = GetNumber(root["lambda"], "lambda");
    if (!(config.lambda >= 0.0 && config.lambda < 1.0)) {
      throw ConfigError("lambda", "must lie in [0, 1)");
    }
  }
  if (root.contains("seed_in_average")) {
    if (!root["seed_in_average"].is_boolean()) {
      throw ConfigError("seed_in_average", "expected true or false");
    }
    config.seed_in_average = root["seed_in_average"].get<bool>();
  }
  if (root.contains("solver")) {
    const json& s = root["solver"];
    RejectUnknownKeys(s, "solver", {"repetitions", "stop_threshold", "threads"});
    if (s.contains("repetitions")) {
      config.solver.repetitions =
          static_cast<int>(GetCount(s["repetitions"], "solver.repetitions"));
      if (config.solver.repetitions < 1) {
        throw ConfigError("solver.repetitions", "must be >= 1");
      }
    }
    if (s.contains("stop_threshold")) {
      config.solver.stop_threshold =
          GetNumber(s["stop_threshold"], "solver.stop_threshold");
      if (!(config.solver.stop_threshold > 0.0)) {
        throw ConfigError("solver.stop_threshold", "must be positive");
      }
    }
    if (s.contains("threads")) {
      config.solver.threads =
          static_cast<int>(GetCount(s["threads"], "solver.threads"));
      if (config.solver.threads < 1) {
        throw ConfigError("solver.threads", "must be >= 1");
      }
    }
  }
  if (root.contains("qecc_stride")) {
    config.qecc_stride = GetCount(root["qecc_stride"], "qecc_stride");
    if (config.qecc_stride < 1) throw ConfigError("qecc_stride", "must be >= 1");
  }
  if (root.contains("output")) {
    if (!root["output"].is_string()) {
      throw ConfigError("output", "expected a directory path");
    }
    config.output_dir = root["output"].get<std::string>();
  }
  if (config.init == InitMode::kKmeansClustering &&
      config.dataset.kind == DatasetSource::Kind::kFiles &&
      config.dataset.features_path.empty()) {
    throw ConfigError("init", "k-means initialization needs dataset.features");
  }
  return config;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path);
  std::stringstream text;
  text << in.rdbuf();
  return ParseExperimentConfig(text.str());
}

LoadedDataset LoadDataset(const DatasetSource& source) {
  if (source.kind == DatasetSource::Kind::kSynthetic) {
    Dataset data = GenerateSynthetic(source.synthetic);
    return {GroundTruth(std::move(data.labels)), std::move(data.features)};
  }
  LoadedDataset loaded{GroundTruth(ReadLabelsFile(source.labels_path)),
                       std::nullopt};
  if (!source.features_path.empty()) {
    loaded.features = ReadFeaturesFile(source.features_path);
    if (loaded.features->rows != loaded.truth.num_objects()) {
      throw std::runtime_error("features file has " +
                               std::to_string(loaded.features->rows) +
                               " rows but labels file has " +
                               std::to_string(loaded.truth.num_objects()));
    }
  }
  return loaded;
}

std::vector<RunSpec> ExpandRuns(const ExperimentConfig& config) {
  std::vector<RunSpec> runs;
  for (double gamma : config.gammas) {
    for (std::size_t batch : config.batch_sizes) {
      for (double epsilon : config.epsilons) {
        for (std::uint32_t tau : config.taus) {
          for (double beta : config.betas) {
            for (const Subsample& xi : config.subsamples) {
              const GridPoint point{gamma, batch, epsilon, tau, beta, xi};
              for (const std::string& strategy : config.strategies) {
                for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
                  runs.push_back({runs.size(), strategy, point, rep,
                                  MixSeed(config.seed, rep)});
                }
              }
            }
          }
        }
      }
    }
  }
  return runs;
}

std::uint64_t RunBudget(const ExperimentConfig& config,
                        std::size_t num_objects) {
  if (config.max_queries > 0) return config.max_queries;
  return static_cast<std::uint64_t>(
      std::llround(config.budget_factor * EdgeCount(num_objects)));
}

LoopConfig MakeLoopConfig(const ExperimentConfig& config, const RunSpec& run,
                          std::size_t num_objects) {
  LoopConfig loop;
  loop.batch_size = run.point.batch_size == 0 ? DefaultBatchSize(num_objects)
                                              : run.point.batch_size;
  loop.max_queries = RunBudget(config, num_objects);
  loop.solver = config.solver;
  if (const auto kind = ParseStrategyKind(run.strategy)) {
    loop.strategy.kind = *kind;
  }
  loop.strategy.epsilon = run.point.epsilon;
  loop.strategy.tau = run.point.tau;
  loop.strategy.beta = run.point.beta;
  loop.strategy.subsample = run.point.subsample;
  loop.noise.gamma = run.point.gamma;
  loop.noise.lambda = config.lambda;
  loop.init = config.init;
  loop.init_clusters = config.init_clusters;
  loop.seed_in_average = config.seed_in_average;
  loop.seed = run.run_seed;
  return loop;
}

namespace {

RunOutput ExecuteQecc(const ExperimentConfig& config,
                      const LoadedDataset& dataset, const RunSpec& run) {
  const GroundTruth& truth = dataset.truth;
  const std::size_t n = truth.num_objects();
  const LoopConfig loop = MakeLoopConfig(config, run, n);

  // Ground-truth similarities, for cost and violation columns.
  SimilarityState star(n);
  for (std::size_t u = 1; u < n; ++u) {
    for (std::size_t v = 0; v < u; ++v) {
      const Edge e{static_cast<ObjectId>(u), static_cast<ObjectId>(v)};
      star.SetSeed(e, truth.SigmaStar(e));
    }
  }

  RunOutput out{run, loop.batch_size, {}};
  const std::uint64_t last =
      (loop.max_queries + loop.batch_size - 1) / loop.batch_size;
  for (std::uint64_t j = 0; j <= last; ++j) {
    if (j % config.qecc_stride != 0 && j != last) continue;
    const std::uint64_t budget = std::min(j * loop.batch_size, loop.max_queries);
    Rng rng(MixSeed(run.run_seed, seed_stream::kBaseline));
    const auto start = std::chrono::steady_clock::now();
    const QeccResult result = RunQecc(truth, loop.noise, budget, rng);
    ExperimentRecord r;
    r.solver_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    r.iteration = j;
    r.cumulative_queries = budget;
    r.ari = AdjustedRandIndex(result.clustering, truth.clustering());
    r.ami = AdjustedMutualInformation(result.clustering, truth.clustering());
    r.cost = ClusteringCost(star, result.clustering);
    r.num_clusters = result.clustering.num_clusters();
    r.violation_count = ViolatingEdges(star, result.clustering).size();
    out.records.push_back(r);
  }
  return out;
}

}  // namespace

RunOutput ExecuteRun(const ExperimentConfig& config,
                     const LoadedDataset& dataset, const RunSpec& run) {
  if (run.strategy == kQeccName) return ExecuteQecc(config, dataset, run);
  const std::size_t n = dataset.truth.num_objects();
  const LoopConfig loop = MakeLoopConfig(config, run, n);
  LoopInputs inputs;
  if (dataset.features) inputs.features = &*dataset.features;
  LoopResult result = RunActiveLoop(dataset.truth, loop, inputs);
  return {run, loop.batch_size, std::move(result.records)};
}

std::vector<SummaryRow> Summarize(const std::vector<RunOutput>& runs) {
  std::map<std::string, std::size_t> group_of;
  std::vector<std::vector<const RunOutput*>> groups;
  for (const RunOutput& run : runs) {
    const GridPoint& p = run.spec.point;
    const std::string key =
        run.spec.strategy + "|" + FormatDouble(p.gamma) + "|" +
        std::to_string(run.batch_size) + "|" + FormatDouble(p.epsilon) + "|" +
        FormatTau(p.tau) + "|" + FormatDouble(p.beta) + "|" +
        p.subsample.ToString();
    auto [it, inserted] = group_of.emplace(key, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(&run);
  }

  std::vector<SummaryRow> rows;
  for (const auto& group : groups) {
    std::vector<double> auc_ari, auc_ami, final_ari;
    for (const RunOutput* run : group) {
      std::vector<double> x, ari, ami;
      for (const auto& r : run->records) {
        x.push_back(static_cast<double>(r.cumulative_queries));
        ari.push_back(r.ari);
        ami.push_back(r.ami);
      }
      if (x.size() >= 2 && x.back() > x.front()) {
        auc_ari.push_back(AreaUnderCurve(x, ari));
        auc_ami.push_back(AreaUnderCurve(x, ami));
      }
      if (!ari.empty()) final_ari.push_back(ari.back());
    }
    SummaryRow row;
    row.strategy = group.front()->spec.strategy;
    row.point = group.front()->spec.point;
    row.batch_size = group.front()->batch_size;
    row.runs = group.size();
    row.auc_ari_mean = Mean(auc_ari);
    row.auc_ari_std = SampleStd(auc_ari, row.auc_ari_mean);
    row.auc_ami_mean = Mean(auc_ami);
    row.auc_ami_std = SampleStd(auc_ami, row.auc_ami_mean);
    row.final_ari_mean = Mean(final_ari);
    row.final_ari_std = SampleStd(final_ari, row.final_ari_mean);
    rows.push_back(row);
  }
  return rows;
}

const char* const kResultsHeader =
    "run_id,strategy,gamma,batch_size,epsilon,tau,beta,xi,repetition,"
    "master_seed,run_seed,iteration,cumulative_queries,ari,ami,cost,"
    "num_clusters,violation_count,early_stop";
const char* const kTimingsHeader = "run_id,iteration,solver_ms,strategy_ms";
const char* const kSummaryHeader =
    "strategy,gamma,batch_size,epsilon,tau,beta,xi,runs,auc_ari_mean,"
    "auc_ari_std,auc_ami_mean,auc_ami_std,final_ari_mean,final_ari_std";

void WriteResultRows(std::ostream& out, const RunOutput& run,
                     std::uint64_t master_seed) {
  const RunSpec& s = run.spec;
  std::ostringstream prefix;
  prefix << s.run_id << ',' << s.strategy << ',' << FormatDouble(s.point.gamma)
         << ',' << run.batch_size << ',' << FormatDouble(s.point.epsilon) << ','
         << FormatTau(s.point.tau) << ',' << FormatDouble(s.point.beta) << ','
         << s.point.subsample.ToString() << ',' << s.repetition << ','
         << master_seed << ',' << s.run_seed << ',';
  const std::string p = prefix.str();
  for (const auto& r : run.records) {
    out << p << r.iteration << ',' << r.cumulative_queries << ','
        << FormatDouble(r.ari) << ',' << FormatDouble(r.ami) << ','
        << FormatDouble(r.cost) << ',' << r.num_clusters << ','
        << r.violation_count << ',' << (r.early_stop ? 1 : 0) << '\n';
  }
}

void WriteTimingRows(std::ostream& out, const RunOutput& run) {
  for (const auto& r : run.records) {
    out << run.spec.run_id << ',' << r.iteration << ','
        << FormatDouble(r.solver_ms) << ',' << FormatDouble(r.strategy_ms)
        << '\n';
  }
}

void WriteSummary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.strategy << ',' << FormatDouble(r.point.gamma) << ','
        << r.batch_size << ',' << FormatDouble(r.point.epsilon) << ','
        << FormatTau(r.point.tau) << ',' << FormatDouble(r.point.beta) << ','
        << r.point.subsample.ToString() << ',' << r.runs << ','
        << FormatDouble(r.auc_ari_mean) << ',' << FormatDouble(r.auc_ari_std)
        << ',' << FormatDouble(r.auc_ami_mean) << ','
        << FormatDouble(r.auc_ami_std) << ',' << FormatDouble(r.final_ari_mean)
        << ',' << FormatDouble(r.final_ari_std) << '\n';
  }
}

std::vector<RunOutput> RunExperiment(const ExperimentConfig& config,
                                     const std::string& output_dir,
                                     const SweepOptions& options) {
  const LoadedDataset dataset = LoadDataset(config.dataset);
  const std::vector<RunSpec> runs = ExpandRuns(config);

  std::filesystem::create_directories(output_dir);
  const std::filesystem::path dir(output_dir);
  std::ofstream results(dir / "results.csv");
  std::ofstream timings(dir / "timings.csv");
  if (!results || !timings) {
    throw std::runtime_error("cannot write to output directory " + output_dir);
  }
  results << kResultsHeader << '\n';
  timings << kTimingsHeader << '\n';

  std::vector<std::optional<RunOutput>> slots(runs.size());
  std::vector<std::exception_ptr> errors(runs.size());
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      std::optional<RunOutput> output;
      std::exception_ptr error;
      try {
        output = ExecuteRun(config, dataset, runs[i]);
      } catch (...) {
        error = std::current_exception();
      }
      {
        std::lock_guard lock(mutex);
        slots[i] = std::move(output);
        errors[i] = error;
        if (!slots[i]) slots[i].emplace();  // marks completion
      }
      ready.notify_all();
    }
  };

  const auto threads = static_cast<std::size_t>(std::max(1, options.threads));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);

  // Single writer: emit runs strictly in run order.
  std::vector<RunOutput> outputs;
  std::exception_ptr first_error;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::unique_lock lock(mutex);
    ready.wait(lock, [&] { return slots[i].has_value(); });
    RunOutput output = std::move(*slots[i]);
    const std::exception_ptr error = errors[i];
    lock.unlock();
    if (error) {
      if (!first_error) first_error = error;
      continue;
    }
    WriteResultRows(results, output, config.seed);
    WriteTimingRows(timings, output);
    results.flush();
    timings.flush();
    if (options.log != nullptr) {
      const auto& last = output.records.back();
      *options.log << "run " << output.spec.run_id + 1 << "/" << runs.size()
                   << " " << output.spec.strategy << " rep "
                   << output.spec.repetition << ": final ARI "
                   << FormatDouble(last.ari) << " after "
                   << last.cumulative_queries << " queries\n";
    }
    outputs.push_back(std::move(output));
  }
  for (auto& t : pool) t.join();

  std::ofstream summary(dir / "summary.csv");
  WriteSummary(summary, Summarize(outputs));
  if (first_error) std::rethrow_exception(first_error);
  return outputs;
}

}  // namespace acc
