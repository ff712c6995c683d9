// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_SCALAR_ODE_HPP
#define TFSI_SCALAR_ODE_HPP

#include <functional>
#include <vector>

#include "tfsi/coupling.hpp"
#include "tfsi/sdirk.hpp"

namespace tfsi {

/// Scalar linear ODE y' = rate * y + forcing(t) posing as the Neumann
/// partner; the stage systems are solved exactly. Drives the time
/// integrator through the regular coupling machinery for the convergence
/// order and stability-function checks.
class ScalarLinearOde final : public NeumannSubsolver {
public:
  ScalarLinearOde(double rate, double y0, SdirkTableau tableau, double tol,
                  std::function<double(double)> forcing = nullptr);

  double value() const { return state_; }
  void set_value(double y) { state_ = y; }

  void begin_stage(const StageContext& ctx) override;
  InterfaceVector solve_stage(const InterfaceFlux&, const StageContext& ctx) override;
  void end_stage(const StageContext& ctx) override;
  void end_step() override;
  double local_error_estimate() const override;
  void save_state() override;
  void restore_state() override;
  InterfaceVector interface_guess(const StageContext&) const override;

private:
  double rate_;
  double state_;
  SdirkTableau tableau_;
  double tol_;
  std::function<double(double)> forcing_;

  double starting_value_ = 0.0;
  double current_ = 0.0;
  std::vector<double> stage_derivatives_;
  double step_solution_ = 0.0;
  double last_dt_ = 0.0;
  bool stage_open_ = false;

  struct Backup {
    double state = 0.0;
    std::vector<double> stage_derivatives;
    double last_dt = 0.0;
  };
  Backup backup_;
  bool has_backup_ = false;
};

/// Dirichlet partner that exchanges nothing: zero flux, zero error. Makes a
/// single-physics problem runnable through the two-solver master loop.
class InertDirichletPartner final : public DirichletSubsolver {
public:
  void begin_stage(const StageContext&) override {}
  InterfaceFlux solve_stage(const InterfaceVector& boundary_temperature,
                            const StageContext&) override {
    return InterfaceFlux::Zero(boundary_temperature.size());
  }
  void end_stage(const StageContext&) override {}
  void end_step() override {}
  double local_error_estimate() const override { return 0.0; }
  void save_state() override {}
  void restore_state() override {}
};

}  // namespace tfsi

#endif
