// SPDX-License-Identifier: Apache-2.0
//
// Experiment runner for the partitioned thermal coupling framework:
//   stage-study        residual decay of the accelerators over one stage
//   matrix             total-iteration table over TOL x method
//   fixed-vs-adaptive  fixed step sizes versus adaptive steering
//   validate           analytic-oracle self checks
//
// Exit codes: 0 success, 1 configuration error, 2 at least one DNF cell.

#include <CLI11.hpp>
#include <iostream>

#include "tfsi/experiments.hpp"
#include "tfsi/validate.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  unsigned long seed = 0;
  bool seed_set = false;
  int jobs = 1;
};

tfsi::ExperimentConfig load_config(const CommonOpts& opts) {
  tfsi::ExperimentConfig cfg = opts.config_path.empty()
                                   ? tfsi::ExperimentConfig::defaults()
                                   : tfsi::ExperimentConfig::from_file(opts.config_path);
  if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
  if (opts.seed_set) cfg.seed = opts.seed;
  return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "configuration file (built-in defaults if omitted)");
  cmd->add_option("--out", opts.out_dir, "output directory (overrides the config)");
  cmd->add_option("--seed", opts.seed, "seed for randomized sweeps")
      ->each([&](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--jobs", opts.jobs, "concurrent cells for the matrix study")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partitioned thermal fluid-structure coupling experiments"};
  app.require_subcommand(1);

  CommonOpts opts;
  CLI::App* stage = app.add_subcommand("stage-study", "single-stage residual decay study");
  add_common(stage, opts);
  CLI::App* matrix = app.add_subcommand("matrix", "iteration-count matrix over TOL x method");
  add_common(matrix, opts);
  CLI::App* fva = app.add_subcommand("fixed-vs-adaptive", "fixed vs adaptive step comparison");
  add_common(fva, opts);
  CLI::App* validate = app.add_subcommand("validate", "run the analytic-oracle property checks");
  add_common(validate, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      const tfsi::ExperimentConfig cfg = load_config(opts);
      const auto cases = tfsi::run_validation(cfg.seed);
      const bool ok = tfsi::report_validation(std::cout, cases);
      return ok ? 0 : 2;
    }

    const tfsi::ExperimentConfig cfg = load_config(opts);

    if (stage->parsed()) {
      const auto rows = tfsi::run_single_stage_study(cfg);
      for (const auto& f : tfsi::emit_stage_study(cfg, rows))
        std::cout << "wrote " << f << '\n';
      return 0;
    }

    if (matrix->parsed()) {
      const auto cells = tfsi::run_iteration_count_matrix(cfg, opts.jobs);
      tfsi::write_summary(std::cout, cfg, cells);
      for (const auto& f : tfsi::emit_matrix(cfg, cells))
        std::cout << "wrote " << f << '\n';
      for (const auto& c : cells)
        if (!c.converged) return 2;
      return 0;
    }

    if (fva->parsed()) {
      const auto rows = tfsi::run_fixed_vs_adaptive(cfg);
      for (const auto& f : tfsi::emit_fixed_vs_adaptive(cfg, rows))
        std::cout << "wrote " << f << '\n';
      for (const auto& r : rows)
        if (!r.converged) return 2;
      return 0;
    }
  } catch (const tfsi::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
