// SPDX-License-Identifier: Apache-2.0
#include "tfsi/scalar_ode.hpp"

#include <cmath>

namespace tfsi {

ScalarLinearOde::ScalarLinearOde(double rate, double y0, SdirkTableau tableau, double tol,
                                 std::function<double(double)> forcing)
    : rate_(rate), state_(y0), tableau_(tableau), tol_(tol), forcing_(std::move(forcing)) {
  if (tol_ <= 0.0) throw ConfigError("ScalarLinearOde: tol must be positive");
}

void ScalarLinearOde::begin_stage(const StageContext& ctx) {
  if (ctx.stage_index == 1) {
    starting_value_ = state_;
  } else {
    if (stage_derivatives_.empty())
      throw SequencingError("ScalarLinearOde: stage 2 before stage 1 derivative");
    starting_value_ = state_ + ctx.dt * tableau_.a21 * stage_derivatives_[0];
  }
  current_ = starting_value_;
  stage_open_ = true;
}

InterfaceVector ScalarLinearOde::solve_stage(const InterfaceFlux&, const StageContext& ctx) {
  if (!stage_open_) throw SequencingError("ScalarLinearOde: solve_stage before begin_stage");
  const double dt_a = ctx.dt * ctx.a_diag;
  const double b = forcing_ ? forcing_(ctx.t_stage) : 0.0;
  const double denom = 1.0 - dt_a * rate_;
  if (denom == 0.0) throw SolverFailure("ScalarLinearOde: singular stage system");
  current_ = (starting_value_ + dt_a * b) / denom;
  InterfaceVector out(1);
  out[0] = current_;
  return out;
}

void ScalarLinearOde::end_stage(const StageContext& ctx) {
  if (!stage_open_) throw SequencingError("ScalarLinearOde: end_stage before begin_stage");
  stage_derivatives_.push_back((current_ - starting_value_) / (ctx.dt * ctx.a_diag));
  step_solution_ = current_;
  last_dt_ = ctx.dt;
  stage_open_ = false;
}

void ScalarLinearOde::end_step() {
  if (stage_derivatives_.size() != 2)
    throw SequencingError("ScalarLinearOde: end_step before both stages finished");
  state_ = step_solution_;
  stage_derivatives_.clear();
}

double ScalarLinearOde::local_error_estimate() const {
  if (stage_derivatives_.size() != 2)
    throw SequencingError("ScalarLinearOde: error estimate needs both stage derivatives");
  const double diff =
      last_dt_ * ((tableau_.b[0] - tableau_.b_hat[0]) * stage_derivatives_[0] +
                  (tableau_.b[1] - tableau_.b_hat[1]) * stage_derivatives_[1]);
  return std::abs(diff) / (1.0 + std::abs(step_solution_));
}

void ScalarLinearOde::save_state() {
  backup_ = Backup{state_, stage_derivatives_, last_dt_};
  has_backup_ = true;
}

void ScalarLinearOde::restore_state() {
  if (!has_backup_) throw SequencingError("ScalarLinearOde: restore without save");
  state_ = backup_.state;
  stage_derivatives_ = backup_.stage_derivatives;
  last_dt_ = backup_.last_dt;
  stage_open_ = false;
}

InterfaceVector ScalarLinearOde::interface_guess(const StageContext&) const {
  if (!stage_open_) throw SequencingError("ScalarLinearOde: interface_guess before begin_stage");
  InterfaceVector out(1);
  out[0] = starting_value_;
  return out;
}

}  // namespace tfsi
