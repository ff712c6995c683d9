// SPDX-License-Identifier: Apache-2.0
#include "tfsi/fluid_surrogate.hpp"

#include <cmath>

namespace tfsi {

void FluidSurrogateConfig::validate() const {
  if (length <= 0.0) throw ConfigError("FluidSurrogate: length must be positive");
  if (cells < 2) throw ConfigError("FluidSurrogate: need at least two cells");
  if (conductivity <= 0.0 || stiffness_multiplier <= 0.0)
    throw ConfigError("FluidSurrogate: conductivity must be positive");
  if (volumetric_heat_capacity <= 0.0)
    throw ConfigError("FluidSurrogate: volumetric heat capacity must be positive");
  if (farfield_temperature <= 0.0 || initial_temperature <= 0.0)
    throw ConfigError("FluidSurrogate: temperatures must be positive (K)");
  if (flux_reconstruction_order != 1 && flux_reconstruction_order != 2)
    throw ConfigError("FluidSurrogate: flux reconstruction order must be 1 or 2");
  if (initial_profile != "uniform" && initial_profile != "steady")
    throw ConfigError("FluidSurrogate: initial_profile must be uniform or steady");
  if (tol <= 0.0) throw ConfigError("FluidSurrogate: tol must be positive");
}

FluidSurrogate::FluidSurrogate(FluidSurrogateConfig cfg, SdirkTableau tableau)
    : cfg_(cfg), tableau_(tableau) {
  cfg_.validate();
  if (cfg_.initial_profile == "steady") {
    const double h = cfg_.length / cfg_.cells;
    state_.resize(cfg_.cells);
    for (int i = 0; i < cfg_.cells; ++i) {
      const double x = (i + 0.5) * h;
      state_[i] = cfg_.initial_temperature +
                  (cfg_.farfield_temperature - cfg_.initial_temperature) * x / cfg_.length;
    }
  } else {
    state_ = Eigen::VectorXd::Constant(cfg_.cells, cfg_.initial_temperature);
  }
}

void FluidSurrogate::set_uniform_temperature(double theta_k) {
  if (theta_k <= 0.0) throw ConfigError("FluidSurrogate: temperature must be positive");
  state_.setConstant(theta_k);
  stage_derivatives_.clear();
  stage_open_ = false;
}

void FluidSurrogate::check_physical(const Eigen::VectorXd& theta) const {
  if (!theta.allFinite() || (theta.array() <= 0.0).any())
    throw SolverFailure("FluidSurrogate: nonphysical cell temperature");
}

double FluidSurrogate::interface_flux(const Eigen::VectorXd& cells,
                                      double theta_interface) const {
  const double h = cfg_.length / cfg_.cells;
  const double lam = cfg_.effective_conductivity();
  // Cell centers sit at h/2, 3h/2, ... with the Dirichlet value on the face
  // at x = 0. The fluid occupies x > 0, so the flux into the structure is
  // +lambda dTheta/dx at the face.
  if (cfg_.flux_reconstruction_order == 1)
    return lam * (cells[0] - theta_interface) / (0.5 * h);
  return lam * (-8.0 * theta_interface + 9.0 * cells[0] - cells[1]) / (3.0 * h);
}

void FluidSurrogate::begin_stage(const StageContext& ctx) {
  starting_vector_ = compute_starting_vector(state_, stage_derivatives_, tableau_,
                                             ctx.stage_index, ctx.dt);
  current_ = starting_vector_;
  stage_open_ = true;
}

InterfaceFlux FluidSurrogate::solve_stage(const InterfaceVector& boundary_temperature,
                                          const StageContext& ctx) {
  if (!stage_open_) throw SequencingError("FluidSurrogate: solve_stage before begin_stage");
  if (boundary_temperature.size() != 1)
    throw ConfigError("FluidSurrogate: expected a single interface temperature");
  const double t_gamma = boundary_temperature[0];
  const double dt_a = ctx.dt * ctx.a_diag;
  const int n = cfg_.cells;
  const double h = cfg_.length / n;
  const double lam = cfg_.effective_conductivity();
  const double rc = cfg_.volumetric_heat_capacity;

  // (rc) (Theta - s) / dt_a = flux balance per cell; Dirichlet faces close
  // the stencil over a half cell.
  BandedMatrix mat(n, 1, 1);
  Eigen::VectorXd rhs = rc / dt_a * starting_vector_;
  const double w = lam / (h * h);
  for (int i = 0; i < n; ++i) {
    double diag = rc / dt_a;
    if (i > 0) {
      mat.add(i, i - 1, -w);
      diag += w;
    } else {
      diag += 2.0 * w;  // half-cell distance to the interface face
      rhs[0] += 2.0 * w * t_gamma;
    }
    if (i < n - 1) {
      mat.add(i, i + 1, -w);
      diag += w;
    } else {
      diag += 2.0 * w;
      rhs[n - 1] += 2.0 * w * cfg_.farfield_temperature;
    }
    mat.add(i, i, diag);
  }

  current_ = mat.lu_solve(rhs);
  check_physical(current_);

  InterfaceFlux out(1);
  out[0] = interface_flux(current_, t_gamma);
  return out;
}

void FluidSurrogate::end_stage(const StageContext& ctx) {
  if (!stage_open_) throw SequencingError("FluidSurrogate: end_stage before begin_stage");
  if (static_cast<int>(stage_derivatives_.size()) != ctx.stage_index - 1)
    throw SequencingError("FluidSurrogate: stage derivatives out of order");
  stage_derivatives_.push_back((current_ - starting_vector_) / (ctx.dt * ctx.a_diag));
  step_solution_ = current_;
  last_dt_ = ctx.dt;
  stage_open_ = false;
}

void FluidSurrogate::end_step() {
  if (stage_derivatives_.size() != 2)
    throw SequencingError("FluidSurrogate: end_step before both stages finished");
  state_ = step_solution_;
  stage_derivatives_.clear();
}

double FluidSurrogate::local_error_estimate() const {
  if (stage_derivatives_.size() != 2)
    throw SequencingError("FluidSurrogate: error estimate needs both stage derivatives");
  const Eigen::VectorXd diff =
      last_dt_ * ((tableau_.b[0] - tableau_.b_hat[0]) * stage_derivatives_[0] +
                  (tableau_.b[1] - tableau_.b_hat[1]) * stage_derivatives_[1]);
  return scaled_rms(diff, step_solution_, 1.0, 1.0);
}

void FluidSurrogate::save_state() {
  backup_ = Backup{state_, stage_derivatives_, last_dt_};
  has_backup_ = true;
}

void FluidSurrogate::restore_state() {
  if (!has_backup_) throw SequencingError("FluidSurrogate: restore without save");
  state_ = backup_.state;
  stage_derivatives_ = backup_.stage_derivatives;
  last_dt_ = backup_.last_dt;
  stage_open_ = false;
}

}  // namespace tfsi
