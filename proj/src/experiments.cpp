// SPDX-License-Identifier: Apache-2.0
#include "tfsi/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <optional>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace tfsi {

namespace {

constexpr double kReferenceTol = 1e-8;

SimulationResult run_one(const ExperimentConfig& cfg, double tol, Accelerator acc, Predictor pre,
                         bool adaptive, double dt) {
  RunParams params;
  params.tol = tol;
  params.accelerator = acc;
  params.predictor = pre;
  params.adaptive = adaptive;
  params.dt0 = dt;
  params.end_time = cfg.end_time;
  CoupledSimulation sim(cfg.model, params);
  return sim.run();
}

SimulationResult reference_run(const ExperimentConfig& cfg) {
  SimulationResult ref = run_one(cfg, kReferenceTol, Accelerator::None, Predictor::None, true,
                                 std::min(cfg.dt0, 0.1));
  if (ref.dnf)
    throw SolverFailure("reference run (TOL = 1e-8) did not finish: " + ref.dnf_reason);
  return ref;
}

// The matrix degrades gracefully when no reference is attainable: totals are
// still the study's primary content, only the error column goes missing.
std::optional<SimulationResult> try_reference_run(const ExperimentConfig& cfg) {
  try {
    return reference_run(cfg);
  } catch (const SolverFailure&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<StageStudyRow> run_single_stage_study(const ExperimentConfig& cfg) {
  std::vector<StageStudyRow> rows;
  for (double dt : cfg.study_dts) {
    for (Accelerator acc : cfg.accelerators) {
      RunParams params;
      params.tol = cfg.study_tol;
      params.accelerator = acc;
      params.predictor = Predictor::None;
      params.adaptive = false;
      params.dt0 = dt;
      params.end_time = cfg.end_time;
      CoupledSimulation sim(cfg.model, params);
      const std::vector<double> norms = sim.first_stage_residuals(dt);
      for (std::size_t i = 0; i < norms.size(); ++i)
        rows.push_back(StageStudyRow{to_string(acc), dt, static_cast<int>(i) + 1, norms[i]});
    }
  }
  return rows;
}

std::vector<MatrixCell> run_iteration_count_matrix(const ExperimentConfig& cfg, int jobs) {
  const std::optional<SimulationResult> reference = try_reference_run(cfg);

  struct Job {
    double tol;
    Accelerator acc;
    Predictor pre;
  };
  std::vector<Job> todo;
  for (double tol : cfg.tols)
    for (Accelerator acc : cfg.accelerators)
      for (Predictor pre : cfg.predictors) todo.push_back(Job{tol, acc, pre});

  std::vector<MatrixCell> cells(todo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < todo.size(); i = next.fetch_add(1)) {
      const Job& job = todo[i];
      MatrixCell& cell = cells[i];
      cell.method = method_label(job.acc, job.pre);
      cell.tol = job.tol;
      try {
        SimulationResult res =
            run_one(cfg, job.tol, job.acc, job.pre, cfg.adaptive, cfg.dt0);
        cell.converged = !res.dnf;
        cell.total_iterations = res.record.total_iterations();
        cell.steps = res.record.accepted_steps();
        cell.rejections = res.record.rejections();
        cell.end_error =
            (res.dnf || !reference) ? 0.0 : res.trajectory_error(*reference);
        cell.record = std::move(res.record);
      } catch (const std::exception&) {
        cell.converged = false;
      }
    }
  };

  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(todo.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return cells;
}

std::vector<FixedVsAdaptiveRow> run_fixed_vs_adaptive(const ExperimentConfig& cfg) {
  const SimulationResult reference = reference_run(cfg);
  std::vector<FixedVsAdaptiveRow> rows;

  for (double tol : cfg.tols) {
    FixedVsAdaptiveRow row;
    row.tol = tol;

    SimulationResult adaptive =
        run_one(cfg, tol, Accelerator::None, Predictor::None, true, cfg.dt0);
    if (adaptive.dnf) {
      rows.push_back(row);
      continue;
    }
    row.adaptive_iterations = adaptive.record.total_iterations();
    row.adaptive_steps = adaptive.record.accepted_steps();
    row.adaptive_error = adaptive.trajectory_error(reference);

    // Accuracy matching: bisect the fixed step size until its end error is
    // within a factor two of the adaptive run's.
    const double target = std::max(row.adaptive_error, 1e-14);
    auto evaluate = [&](double dt_try) -> std::pair<double, SimulationResult> {
      const int steps = std::max(1, static_cast<int>(std::ceil(cfg.end_time / dt_try)));
      const double dt = cfg.end_time / steps;
      SimulationResult res = run_one(cfg, tol, Accelerator::None, Predictor::None, false, dt);
      return {dt, std::move(res)};
    };
    auto matched = [&](double err) { return err >= 0.5 * target && err <= 2.0 * target; };

    std::pair<double, SimulationResult> best{0.0, SimulationResult{}};
    bool found = false;
    auto probe = [&](double dt_try) -> double {
      auto [dt, res] = evaluate(dt_try);
      if (res.dnf) return std::numeric_limits<double>::infinity();
      const double err = res.trajectory_error(reference);
      if (!found && matched(err)) {
        best = {dt, std::move(res)};
        found = true;
      }
      return err;
    };

    // Bracket the target error between an under- and an over-resolving step
    // size, then bisect in log space.
    double lo = std::min(cfg.end_time / std::max(1, row.adaptive_steps), cfg.end_time);
    double hi = lo;
    for (int it = 0; it < 40 && !found && probe(lo) > target; ++it) lo *= 0.5;
    for (int it = 0; it < 40 && !found && hi < cfg.end_time && probe(hi) < target; ++it)
      hi = std::min(hi * 2.0, cfg.end_time);
    for (int it = 0; it < 40 && !found && hi > lo * 1.0000001; ++it) {
      const double mid = std::sqrt(lo * hi);
      if (probe(mid) > target)
        hi = mid;
      else
        lo = mid;
    }

    if (found) {
      row.converged = true;
      row.fixed_dt = best.first;
      row.fixed_iterations = best.second.record.total_iterations();
      row.fixed_steps = best.second.record.accepted_steps();
      row.fixed_error = best.second.trajectory_error(reference);
      row.ratio = row.adaptive_iterations > 0
                      ? static_cast<double>(row.fixed_iterations) /
                            static_cast<double>(row.adaptive_iterations)
                      : 0.0;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_stage_study_csv(std::ostream& os, const std::vector<StageStudyRow>& rows) {
  os << "method,dt,iteration,residual_norm\n";
  for (const auto& r : rows)
    os << r.method << ',' << format_double(r.dt) << ',' << r.iteration << ','
       << format_double(r.residual_norm) << '\n';
}

void write_stage_study_gnuplot(std::ostream& os, const std::vector<StageStudyRow>& rows) {
  // Blocks separated by blank lines, one per (method, dt) curve.
  std::string current;
  for (const auto& r : rows) {
    const std::string key = r.method + "@" + format_double(r.dt);
    if (key != current) {
      if (!current.empty()) os << "\n\n";
      os << "# method=" << r.method << " dt=" << format_double(r.dt) << '\n';
      current = key;
    }
    os << r.iteration << ' ' << format_double(r.residual_norm) << '\n';
  }
}

void write_matrix_csv(std::ostream& os, const std::vector<MatrixCell>& cells) {
  os << "method,tol,total_iterations,steps,rejections,end_error\n";
  for (const auto& c : cells) {
    os << c.method << ',' << format_double(c.tol) << ',';
    if (c.converged)
      os << c.total_iterations;
    else
      os << "DNF";
    os << ',' << c.steps << ',' << c.rejections << ',' << format_double(c.end_error) << '\n';
  }
}

std::vector<MatrixCell> parse_matrix_csv(std::istream& is) {
  std::vector<MatrixCell> cells;
  std::string line;
  if (!std::getline(is, line) || line != "method,tol,total_iterations,steps,rejections,end_error")
    throw ConfigError("matrix CSV: bad header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (fields.size() != 6) throw ConfigError("matrix CSV: expected 6 fields");
    MatrixCell c;
    c.method = fields[0];
    c.tol = std::stod(fields[1]);
    if (fields[2] == "DNF") {
      c.converged = false;
      c.total_iterations = 0;
    } else {
      c.converged = true;
      c.total_iterations = std::stol(fields[2]);
    }
    c.steps = std::stoi(fields[3]);
    c.rejections = std::stoi(fields[4]);
    c.end_error = std::stod(fields[5]);
    cells.push_back(std::move(c));
  }
  return cells;
}

void write_fixed_vs_adaptive_csv(std::ostream& os, const std::vector<FixedVsAdaptiveRow>& rows) {
  os << "tol,fixed_dt,fixed_iterations,fixed_steps,fixed_error,"
        "adaptive_iterations,adaptive_steps,adaptive_error,ratio\n";
  for (const auto& r : rows) {
    os << format_double(r.tol) << ',';
    if (r.converged)
      os << format_double(r.fixed_dt) << ',' << r.fixed_iterations << ',' << r.fixed_steps << ','
         << format_double(r.fixed_error) << ',' << r.adaptive_iterations << ','
         << r.adaptive_steps << ',' << format_double(r.adaptive_error) << ','
         << format_double(r.ratio) << '\n';
    else
      os << "DNF,DNF,DNF,DNF," << r.adaptive_iterations << ',' << r.adaptive_steps << ','
         << format_double(r.adaptive_error) << ",DNF\n";
  }
}

void write_summary(std::ostream& os, const ExperimentConfig& cfg,
                   const std::vector<MatrixCell>& cells) {
  std::vector<std::string> methods;
  for (const auto& c : cells)
    if (std::find(methods.begin(), methods.end(), c.method) == methods.end())
      methods.push_back(c.method);

  os << "Total fixed-point iterations, case '" << cfg.case_name << "', " << cfg.end_time
     << " s of simulated time\n\n";
  os << std::left << std::setw(10) << "TOL";
  for (const auto& m : methods) os << std::setw(18) << m;
  os << '\n';
  for (double tol : cfg.tols) {
    std::ostringstream tl;
    tl << std::scientific << std::setprecision(0) << tol;
    os << std::left << std::setw(10) << tl.str();
    for (const auto& m : methods) {
      std::string cellv = "-";
      for (const auto& c : cells)
        if (c.method == m && c.tol == tol) cellv = c.converged ? std::to_string(c.total_iterations) : "DNF";
      os << std::setw(18) << cellv;
    }
    os << '\n';
  }
}

namespace {

std::string write_file(const std::string& dir, const std::string& name,
                       const std::function<void(std::ostream&)>& writer) {
  std::filesystem::create_directories(dir);
  std::string path = dir + "/" + name;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write output file '" + path + "'");
  writer(os);
  return path;
}

}  // namespace

std::vector<std::string> emit_stage_study(const ExperimentConfig& cfg,
                                          const std::vector<StageStudyRow>& rows) {
  return {
      write_file(cfg.output_dir, "stage_study.csv",
                 [&](std::ostream& os) { write_stage_study_csv(os, rows); }),
      write_file(cfg.output_dir, "stage_study.dat",
                 [&](std::ostream& os) { write_stage_study_gnuplot(os, rows); }),
  };
}

std::vector<std::string> emit_matrix(const ExperimentConfig& cfg,
                                     const std::vector<MatrixCell>& cells) {
  return {
      write_file(cfg.output_dir, "matrix.csv",
                 [&](std::ostream& os) { write_matrix_csv(os, cells); }),
      write_file(cfg.output_dir, "summary.txt",
                 [&](std::ostream& os) { write_summary(os, cfg, cells); }),
  };
}

std::vector<std::string> emit_fixed_vs_adaptive(const ExperimentConfig& cfg,
                                                const std::vector<FixedVsAdaptiveRow>& rows) {
  return {write_file(cfg.output_dir, "fixed_vs_adaptive.csv", [&](std::ostream& os) {
    write_fixed_vs_adaptive_csv(os, rows);
  })};
}

}  // namespace tfsi
