// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_EXPERIMENTS_HPP
#define TFSI_EXPERIMENTS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "tfsi/config.hpp"
#include "tfsi/simulation.hpp"

namespace tfsi {

// ---------------------------------------------------------------------------
// Single-stage residual-decay study (per accelerator, fixed step sizes).

struct StageStudyRow {
  std::string method;
  double dt = 0.0;
  int iteration = 0;       // 1-based sweep index
  double residual_norm = 0.0;
};

std::vector<StageStudyRow> run_single_stage_study(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Iteration-count matrix over TOL x (accelerator, predictor) cells.

struct MatrixCell {
  std::string method;
  double tol = 0.0;
  bool converged = false;
  long total_iterations = 0;
  int steps = 0;         // accepted steps
  int rejections = 0;
  double end_error = 0.0;  // vs tight-tolerance reference of the same discretization
  RunRecord record;
};

/// Runs every (tol, accelerator, predictor) combination of the config plus
/// one tight-tolerance reference per discretization for the error column.
/// Cells are independent; jobs > 1 distributes them over worker threads.
std::vector<MatrixCell> run_iteration_count_matrix(const ExperimentConfig& cfg, int jobs = 1);

// ---------------------------------------------------------------------------
// Fixed versus adaptive step-size comparison at matched accuracy.

struct FixedVsAdaptiveRow {
  double tol = 0.0;
  bool converged = false;
  long adaptive_iterations = 0;
  int adaptive_steps = 0;
  double adaptive_error = 0.0;
  double fixed_dt = 0.0;
  long fixed_iterations = 0;
  int fixed_steps = 0;
  double fixed_error = 0.0;
  double ratio = 0.0;  // fixed / adaptive total iterations
};

std::vector<FixedVsAdaptiveRow> run_fixed_vs_adaptive(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Machine-readable outputs. Numbers are written with '%.17g', '.' decimal
// separator and LF line endings; identical inputs give identical bytes.

std::string format_double(double v);

void write_stage_study_csv(std::ostream& os, const std::vector<StageStudyRow>& rows);
void write_stage_study_gnuplot(std::ostream& os, const std::vector<StageStudyRow>& rows);
void write_matrix_csv(std::ostream& os, const std::vector<MatrixCell>& cells);
void write_fixed_vs_adaptive_csv(std::ostream& os, const std::vector<FixedVsAdaptiveRow>& rows);
void write_summary(std::ostream& os, const ExperimentConfig& cfg,
                   const std::vector<MatrixCell>& cells);

/// Parses a matrix CSV back into cells (without records); inverse of
/// write_matrix_csv for the documented schema
/// method,tol,total_iterations,steps,rejections,end_error.
std::vector<MatrixCell> parse_matrix_csv(std::istream& is);

/// Writes the study outputs under cfg.output_dir, creating it if needed.
/// Returns the written file names.
std::vector<std::string> emit_stage_study(const ExperimentConfig& cfg,
                                          const std::vector<StageStudyRow>& rows);
std::vector<std::string> emit_matrix(const ExperimentConfig& cfg,
                                     const std::vector<MatrixCell>& cells);
std::vector<std::string> emit_fixed_vs_adaptive(const ExperimentConfig& cfg,
                                                const std::vector<FixedVsAdaptiveRow>& rows);

}  // namespace tfsi

#endif
