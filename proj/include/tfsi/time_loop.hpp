// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_TIME_LOOP_HPP
#define TFSI_TIME_LOOP_HPP

#include <functional>
#include <optional>

#include "tfsi/coupling.hpp"
#include "tfsi/predictors.hpp"
#include "tfsi/run_record.hpp"
#include "tfsi/sdirk.hpp"

namespace tfsi {

struct StepOutcome {
  bool accepted = false;
  double error_estimate = 0.0;
  double dt_next = 0.0;
  StepRecord record;
  InterfaceVector interface_end;  // converged stage-2 interface temperatures
};

/// One partitioned SDIRK2 step: per stage, builds the stage context, seeds
/// the interface iteration from the configured predictor (or the starting
/// vectors), runs the Gauss-Seidel stage solve and records the stage
/// derivatives. After stage 2 the separately reported local error estimates
/// are aggregated; in adaptive mode the step is accepted iff est <= TOL,
/// otherwise both subsolver states are restored from their backups.
/// Coupling nonconvergence counts as a rejection with dt halved. On
/// acceptance the interface time history is advanced; rejected attempts
/// leave it untouched.
StepOutcome sdirk2_step(DirichletSubsolver& fluid, NeumannSubsolver& structure,
                        const SdirkTableau& tableau, double t_n, double dt, double dt_prev,
                        const CouplingConfig& coupling, const StepController& controller,
                        TimeHistory& history, bool adaptive);

struct TimeLoopConfig {
  double t_end = 100.0;
  double dt0 = 0.5;
  bool adaptive = true;
  long max_steps = 200000;  // safety bound on step attempts
};

struct TimeLoopResult {
  RunRecord record;
  double t_reached = 0.0;
  InterfaceVector interface_end;
};

/// Drives sdirk2_step from t = 0 to t_end. The final step is shortened to
/// land on t_end exactly. Throws SolverFailure when dt underflows
/// controller.dt_min or the step budget is exhausted.
TimeLoopResult run_time_loop(DirichletSubsolver& fluid, NeumannSubsolver& structure,
                             const SdirkTableau& tableau, const TimeLoopConfig& loop,
                             const CouplingConfig& coupling, const StepController& controller,
                             const InterfaceVector& interface_initial);

}  // namespace tfsi

#endif
