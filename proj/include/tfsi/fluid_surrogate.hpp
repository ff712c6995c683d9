// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_FLUID_SURROGATE_HPP
#define TFSI_FLUID_SURROGATE_HPP

#include <string>
#include <vector>

#include "tfsi/banded.hpp"
#include "tfsi/coupling.hpp"
#include "tfsi/sdirk.hpp"

namespace tfsi {

/// Parameters of the gas boundary-layer stand-in: a 1D constant-coefficient
/// heat conduction column normal to the interface, Dirichlet interface
/// temperature on the near face, far-field temperature on the other.
struct FluidSurrogateConfig {
  double length = 0.05;                    // m
  int cells = 50;                          // finite-volume cells
  double conductivity = 0.03;              // W/(m K), air-like
  double stiffness_multiplier = 1.0;       // coupling-strength knob on lambda
  double volumetric_heat_capacity = 1206.0;  // (rho c), J/(m^3 K)
  double farfield_temperature = 273.0;     // K
  double initial_temperature = 273.0;      // K
  // "uniform": all cells at initial_temperature. "steady": the linear
  // steady conduction profile between initial_temperature at the interface
  // face and the far-field value, the usual initialization against a hot
  // wall.
  std::string initial_profile = "uniform";
  int flux_reconstruction_order = 2;       // 1 | 2, one-sided at the interface
  double tol = 1e-4;                       // TOL for the scaled error norm

  double effective_conductivity() const { return conductivity * stiffness_multiplier; }
  void validate() const;
};

/// The Dirichlet-side subsolver standing in for the Navier-Stokes code.
/// Accepts the interface temperature, advances its stage system by a
/// backward-Euler-type solve and reports the interface heat flux
/// (positive flux heats the structure).
class FluidSurrogate final : public DirichletSubsolver {
public:
  explicit FluidSurrogate(FluidSurrogateConfig cfg, SdirkTableau tableau);

  const FluidSurrogateConfig& config() const { return cfg_; }
  const Eigen::VectorXd& cell_temperatures() const { return state_; }
  void set_uniform_temperature(double theta_k);

  /// Flux implied by the current cell values and the given interface
  /// temperature: lambda * dTheta/dx at the interface face, reconstructed
  /// one-sided at the configured order.
  double interface_flux(const Eigen::VectorXd& cells, double theta_interface) const;

  // Subsolver lifecycle --------------------------------------------------
  void begin_stage(const StageContext& ctx) override;
  InterfaceFlux solve_stage(const InterfaceVector& boundary_temperature,
                            const StageContext& ctx) override;
  void end_stage(const StageContext& ctx) override;
  void end_step() override;
  double local_error_estimate() const override;
  void save_state() override;
  void restore_state() override;

private:
  void check_physical(const Eigen::VectorXd& theta) const;

  FluidSurrogateConfig cfg_;
  SdirkTableau tableau_;
  Eigen::VectorXd state_;
  Eigen::VectorXd starting_vector_;
  Eigen::VectorXd current_;
  std::vector<Eigen::VectorXd> stage_derivatives_;
  Eigen::VectorXd step_solution_;
  double last_dt_ = 0.0;
  bool stage_open_ = false;

  struct Backup {
    Eigen::VectorXd state;
    std::vector<Eigen::VectorXd> stage_derivatives;
    double last_dt = 0.0;
  };
  Backup backup_;
  bool has_backup_ = false;
};

}  // namespace tfsi

#endif
