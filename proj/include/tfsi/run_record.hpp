// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_RUN_RECORD_HPP
#define TFSI_RUN_RECORD_HPP

#include <string>
#include <vector>

namespace tfsi {

struct StageRecord {
  int stage = 0;                       // 1 or 2
  int iterations = 0;                  // fluid+structure solve pairs
  std::vector<double> residual_norms;  // |r|_2 per sweep
};

struct StepRecord {
  double t_n = 0.0;
  double dt = 0.0;
  bool accepted = false;
  double error_estimate = 0.0;
  double interface_value = 0.0;  // converged stage-2 interface temperature
  std::vector<StageRecord> stages;

  int iterations() const {
    int total = 0;
    for (const auto& s : stages) total += s.iterations;
    return total;
  }
};

/// Per-run log of one coupled simulation; every table cell of the harness
/// is reproducible from this record without re-running.
struct RunRecord {
  std::string method;   // "<accelerator>+<predictor>" label
  double tol = 0.0;
  bool adaptive = true;
  bool finished = false;
  std::vector<StepRecord> steps;

  long total_iterations() const {
    long total = 0;
    for (const auto& s : steps) total += s.iterations();
    return total;
  }
  int accepted_steps() const {
    int n = 0;
    for (const auto& s : steps) n += s.accepted ? 1 : 0;
    return n;
  }
  int rejections() const { return static_cast<int>(steps.size()) - accepted_steps(); }
};

}  // namespace tfsi

#endif
