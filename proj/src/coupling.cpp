// SPDX-License-Identifier: Apache-2.0
#include "tfsi/coupling.hpp"

#include <cmath>

#include "tfsi/acceleration.hpp"
#include "tfsi/history.hpp"

namespace tfsi {

std::string to_string(Accelerator a) {
  switch (a) {
    case Accelerator::None: return "none";
    case Accelerator::Aitken: return "aitken";
    case Accelerator::Mpe: return "mpe";
    case Accelerator::Rre: return "rre";
  }
  return "?";
}

std::string to_string(Predictor p) {
  switch (p) {
    case Predictor::None: return "none";
    case Predictor::Linear: return "linear";
    case Predictor::Quadratic: return "quadratic";
  }
  return "?";
}

Accelerator accelerator_from_string(const std::string& s) {
  if (s == "none") return Accelerator::None;
  if (s == "aitken") return Accelerator::Aitken;
  if (s == "mpe") return Accelerator::Mpe;
  if (s == "rre") return Accelerator::Rre;
  throw ConfigError("unknown accelerator '" + s + "' (none|aitken|mpe|rre)");
}

Predictor predictor_from_string(const std::string& s) {
  if (s == "none") return Predictor::None;
  if (s == "linear") return Predictor::Linear;
  if (s == "quadratic") return Predictor::Quadratic;
  throw ConfigError("unknown predictor '" + s + "' (none|linear|quadratic)");
}

void CouplingConfig::validate() const {
  if (tol <= 0.0) throw ConfigError("CouplingConfig: tol must be positive");
  if (divisor <= 0.0) throw ConfigError("CouplingConfig: divisor must be positive");
  if (max_iterations < 2)
    throw ConfigError("CouplingConfig: max_iterations must be >= 2");
  if (history_window < 0)
    throw ConfigError("CouplingConfig: history_window must be >= 0");
}

CouplingResidual interface_residual(const InterfaceVector& theta_new,
                                    const InterfaceVector& theta_old) {
  if (theta_new.size() != theta_old.size())
    throw ConfigError("interface_residual: length mismatch");
  return theta_new - theta_old;
}

bool termination_check(const CouplingResidual& r, const InterfaceVector& theta0,
                       const CouplingConfig& cfg) {
  const double ref = theta0.norm();
  if (ref == 0.0)
    throw ConfigError("termination_check: |Theta^(0)| vanishes, relative criterion undefined");
  return r.norm() <= (cfg.tol / cfg.divisor) * ref;
}

namespace {

InterfaceVector apply_accelerator(Accelerator which, const IterationHistory& history,
                                  AitkenState& aitken, int window) {
  switch (which) {
    case Accelerator::Aitken: {
      auto [theta, state] = aitken_update(history, aitken);
      aitken = state;
      return theta;
    }
    case Accelerator::Mpe:
      return mpe_extrapolate(history, window);
    case Accelerator::Rre:
      return rre_extrapolate(history, window);
    case Accelerator::None:
      break;
  }
  return history.last_iterate();
}

}  // namespace

StageSolveResult gauss_seidel_stage_solve(DirichletSubsolver& fluid,
                                          NeumannSubsolver& structure,
                                          const StageContext& ctx,
                                          const InterfaceVector& initial_guess,
                                          const CouplingConfig& cfg) {
  cfg.validate();
  if (initial_guess.size() < 1)
    throw ConfigError("gauss_seidel_stage_solve: empty initial guess");

  IterationHistory history;
  history.push(initial_guess);
  AitkenState aitken;  // omega resets to 0.8 at every stage

  StageSolveResult result;
  for (int sweep = 1; sweep <= cfg.max_iterations; ++sweep) {
    const InterfaceFlux flux = fluid.solve_stage(history.last_iterate(), ctx);
    InterfaceVector theta = structure.solve_stage(flux, ctx);
    if (theta.size() != initial_guess.size())
      throw ConfigError("gauss_seidel_stage_solve: interface length changed");

    history.push(std::move(theta));
    result.iterations = sweep;
    result.residual_norms.push_back(history.last_residual_norm());

    if (termination_check(history.last_residual(), initial_guess, cfg)) {
      result.temperatures = history.last_iterate();
      return result;
    }

    // All methods need two iterations to start; afterwards the accelerated
    // iterate replaces the raw one and feeds the next sweep.
    if (cfg.accelerator != Accelerator::None && history.residual_count() >= 2)
      history.replace_last(apply_accelerator(cfg.accelerator, history, aitken,
                                             cfg.history_window));
  }

  const std::string message =
      "coupling iteration failed to meet the termination criterion within " +
      std::to_string(cfg.max_iterations) + " sweeps (last |r| = " +
      std::to_string(result.residual_norms.back()) + ")";
  throw NonconvergenceError(message, std::move(result.residual_norms));
}

}  // namespace tfsi
