// SPDX-License-Identifier: Apache-2.0
#include "tfsi/predictors.hpp"

#include <cassert>
#include <cmath>

namespace tfsi {

namespace detail {

Eigen::VectorXd lagrange_weights(const Eigen::VectorXd& times, double target) {
  const int n = static_cast<int>(times.size());
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    double v = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = times[i] - times[j];
      if (d == 0.0) throw ConfigError("lagrange_weights: coincident nodes");
      v *= (target - times[j]) / d;
    }
    w[i] = v;
  }
  assert(std::abs(w.sum() - 1.0) < 1e-12);
  return w;
}

}  // namespace detail

namespace {

void check_positive_steps(const TimeHistory& h, bool need_prev) {
  if (h.dt_n <= 0.0) throw ConfigError("predictor: dt_n must be positive");
  if (need_prev && h.dt_prev <= 0.0)
    throw ConfigError("predictor: dt_prev must be positive");
}

}  // namespace

InterfaceVector predict_stage1_linear(const TimeHistory& h, double c1) {
  if (!h.theta_prev) return h.theta_n;  // cold start: constant prediction
  check_positive_steps(h, true);
  const double eta = c1 * h.dt_n / h.dt_prev;
  return (1.0 + eta) * h.theta_n - eta * (*h.theta_prev);
}

InterfaceVector predict_stage1_quadratic(const TimeHistory& h, double c1) {
  if (!h.theta_half_prev || !h.theta_prev) return predict_stage1_linear(h, c1);
  check_positive_steps(h, true);
  // Relative to t_n: nodes at -dt_prev, -(1-c1)*dt_prev, 0; target c1*dt_n.
  Eigen::VectorXd times(3);
  times << -h.dt_prev, -(1.0 - c1) * h.dt_prev, 0.0;
  const Eigen::VectorXd w = detail::lagrange_weights(times, c1 * h.dt_n);
  return w[0] * (*h.theta_prev) + w[1] * (*h.theta_half_prev) + w[2] * h.theta_n;
}

InterfaceVector predict_stage2_linear(const TimeHistory& h, double c1) {
  if (!h.theta_stage1) throw SequencingError("stage-2 predictor called before stage 1");
  check_positive_steps(h, false);
  return (1.0 - 1.0 / c1) * h.theta_n + (1.0 / c1) * (*h.theta_stage1);
}

InterfaceVector predict_stage2_quadratic(const TimeHistory& h, double c1) {
  if (!h.theta_stage1) throw SequencingError("stage-2 predictor called before stage 1");
  if (!h.theta_prev) return predict_stage2_linear(h, c1);
  check_positive_steps(h, true);
  // Relative to t_n: nodes at -dt_prev, 0, c1*dt_n; target dt_n.
  Eigen::VectorXd times(3);
  times << -h.dt_prev, 0.0, c1 * h.dt_n;
  const Eigen::VectorXd w = detail::lagrange_weights(times, h.dt_n);
  return w[0] * (*h.theta_prev) + w[1] * h.theta_n + w[2] * (*h.theta_stage1);
}

}  // namespace tfsi
