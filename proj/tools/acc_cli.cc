// Command-line experiment runner.
//
//   acc run <config.json> [--out DIR] [--seed N] [--threads N] [--dry-run]

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "acc/harness.h"

int main(int argc, char** argv) {
  CLI::App app{"Active correlation clustering experiment runner"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "Run an experiment sweep");
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int threads = 1;
  bool dry_run = false;
  run->add_option("config", config_path, "JSON experiment config")
      ->required()
      ->check(CLI::ExistingFile);
  auto* out_opt =
      run->add_option("--out", out_dir, "Output directory (overrides config)");
  auto* seed_opt =
      run->add_option("--seed", seed, "Master seed (overrides config)");
  run->add_option("--threads", threads, "Concurrent runs")
      ->check(CLI::PositiveNumber);
  run->add_flag("--dry-run", dry_run, "Validate the config and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    acc::ExperimentConfig config = acc::LoadExperimentConfig(config_path);
    if (*seed_opt) config.seed = seed;
    if (*out_opt) config.output_dir = out_dir;
    const auto runs = acc::ExpandRuns(config);
    if (dry_run) {
      const acc::LoadedDataset dataset = acc::LoadDataset(config.dataset);
      const std::size_t n = dataset.truth.num_objects();
      std::cout << "config ok: " << runs.size() << " runs over " << n
                << " objects, budget " << acc::RunBudget(config, n)
                << " queries per run, output " << config.output_dir << "\n";
      return 0;
    }
    acc::SweepOptions options;
    options.threads = threads;
    options.log = &std::cerr;
    acc::RunExperiment(config, config.output_dir, options);
    std::cout << "wrote " << config.output_dir << "/results.csv, timings.csv, "
              << "summary.csv (" << runs.size() << " runs)\n";
  } catch (const acc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
