// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_COUPLING_HPP
#define TFSI_COUPLING_HPP

#include <string>
#include <vector>

#include "tfsi/sdirk.hpp"
#include "tfsi/types.hpp"

namespace tfsi {

enum class Accelerator { None, Aitken, Mpe, Rre };
enum class Predictor { None, Linear, Quadratic };

std::string to_string(Accelerator a);
std::string to_string(Predictor p);
Accelerator accelerator_from_string(const std::string& s);
Predictor predictor_from_string(const std::string& s);

struct CouplingConfig {
  double tol = 1e-4;        // time-integration tolerance TOL
  double divisor = 5.0;     // termination threshold is (TOL/divisor)*|Theta^(0)|
  int max_iterations = 100;
  Accelerator accelerator = Accelerator::None;
  Predictor predictor = Predictor::None;
  int history_window = 0;   // residuals kept for MPE/RRE; 0 = full stage history

  void validate() const;
};

/// Lifecycle shared by both subdomain solvers. The master drives every
/// instance through begin_stage / solve_stage (on the role interface below) /
/// end_stage per stage, then end_step once the step is accepted. Stage
/// derivatives are recorded by end_stage; save/restore must round-trip
/// bitwise so rejected steps can be retried deterministically.
class Subsolver {
public:
  virtual ~Subsolver() = default;

  virtual void begin_stage(const StageContext& ctx) = 0;
  virtual void end_stage(const StageContext& ctx) = 0;
  virtual void end_step() = 0;

  /// Scaled norm of dt * sum (b_j - b_hat_j) k_j over this subdomain's
  /// unknowns; valid once both stages of the step are finished.
  virtual double local_error_estimate() const = 0;

  virtual void save_state() = 0;
  virtual void restore_state() = 0;
};

/// The Dirichlet partner (smaller heat conductivity): receives interface
/// temperatures, returns interface heat flux.
class DirichletSubsolver : public Subsolver {
public:
  virtual InterfaceFlux solve_stage(const InterfaceVector& boundary_temperature,
                                    const StageContext& ctx) = 0;
};

/// The Neumann partner: receives interface heat flux, returns interface
/// temperatures.
class NeumannSubsolver : public Subsolver {
public:
  virtual InterfaceVector solve_stage(const InterfaceFlux& boundary_flux,
                                      const StageContext& ctx) = 0;

  /// Interface restriction of this stage's starting vector; the iteration's
  /// initial guess when no time-history predictor is active.
  virtual InterfaceVector interface_guess(const StageContext& ctx) const = 0;
};

/// Interface residual r = theta_new - theta_old.
CouplingResidual interface_residual(const InterfaceVector& theta_new,
                                    const InterfaceVector& theta_old);

/// Relative termination test |r|_2 <= (TOL/divisor) * |Theta^(0)|_2.
/// A vanishing reference norm cannot be scaled against and is rejected;
/// absolute temperatures preclude it in the thermal setting.
bool termination_check(const CouplingResidual& r, const InterfaceVector& theta0,
                       const CouplingConfig& cfg);

struct StageSolveResult {
  InterfaceVector temperatures;
  int iterations = 0;                  // fluid+structure solve pairs
  std::vector<double> residual_norms;  // |r|_2 after each sweep
};

/// Nonlinear Gauss-Seidel iteration over the two subsolvers for one
/// Runge-Kutta stage. Each sweep prescribes the current interface
/// temperature to the Dirichlet partner, feeds the resulting flux to the
/// Neumann partner, records the interface residual and tests termination.
/// Once two residuals exist, an unconverged sweep's iterate is transformed
/// by the configured accelerator and the transformed value feeds the next
/// sweep (the first two sweeps are therefore identical to the
/// unaccelerated iteration). Throws NonconvergenceError when
/// max_iterations sweeps do not meet the termination criterion.
StageSolveResult gauss_seidel_stage_solve(DirichletSubsolver& fluid,
                                          NeumannSubsolver& structure,
                                          const StageContext& ctx,
                                          const InterfaceVector& initial_guess,
                                          const CouplingConfig& cfg);

}  // namespace tfsi

#endif
