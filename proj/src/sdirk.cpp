// SPDX-License-Identifier: Apache-2.0
#include "tfsi/sdirk.hpp"

#include <algorithm>
#include <cmath>

namespace tfsi {

SdirkTableau SdirkTableau::sdirk2() {
  const double alpha = 1.0 - std::sqrt(2.0) / 2.0;
  const double alpha_hat = 2.0 - 1.25 * std::sqrt(2.0);
  SdirkTableau t;
  t.alpha = alpha;
  t.a21 = 1.0 - alpha;
  t.c = {alpha, 1.0};
  t.b = {1.0 - alpha, alpha};
  t.b_hat = {1.0 - alpha_hat, alpha_hat};
  return t;
}

bool SdirkTableau::stiffly_accurate(double tol) const {
  return std::abs(b[0] - a21) <= tol && std::abs(b[1] - alpha) <= tol;
}

void StepController::validate() const {
  if (tol <= 0.0) throw ConfigError("StepController: tol must be positive");
  if (!(safety > 0.0 && safety <= 1.0))
    throw ConfigError("StepController: safety must be in (0, 1]");
  if (!(shrink_limit > 0.0 && shrink_limit < 1.0 && growth_limit > 1.0))
    throw ConfigError("StepController: need 0 < f_min < 1 < f_max");
  if (!(dt_min > 0.0 && dt_min <= dt_max))
    throw ConfigError("StepController: need 0 < dt_min <= dt_max");
}

double aggregate_error(double est_fluid, double est_structure) {
  if (est_fluid < 0.0 || est_structure < 0.0)
    throw SequencingError("aggregate_error: negative local error estimate");
  return std::max(est_fluid, est_structure);
}

double next_step_size(double est, double dt, const StepController& ctrl) {
  double factor;
  if (est <= 0.0) {
    factor = ctrl.growth_limit;
  } else {
    factor = ctrl.safety * std::sqrt(ctrl.tol / est);
    factor = std::clamp(factor, ctrl.shrink_limit, ctrl.growth_limit);
  }
  return std::clamp(dt * factor, ctrl.dt_min, ctrl.dt_max);
}

Eigen::VectorXd compute_starting_vector(const Eigen::VectorXd& state_n,
                                        const std::vector<Eigen::VectorXd>& stage_derivatives,
                                        const SdirkTableau& tableau, int stage_index,
                                        double dt) {
  if (stage_index == 1) return state_n;
  if (stage_index == 2) {
    if (stage_derivatives.empty())
      throw SequencingError("starting vector for stage 2 requested before stage 1 derivative");
    return state_n + dt * tableau.a21 * stage_derivatives[0];
  }
  throw SequencingError("SDIRK2 has exactly two stages");
}

}  // namespace tfsi
