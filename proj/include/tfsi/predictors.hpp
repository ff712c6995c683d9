// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_PREDICTORS_HPP
#define TFSI_PREDICTORS_HPP

#include <optional>

#include "tfsi/types.hpp"

namespace tfsi {

/// Interface-temperature time history consumed by the stage predictors.
/// theta_prev and theta_half_prev come from the previous accepted step
/// (value at t_{n-1} and the stage-1 value at t_{n-1} + c1*dt_prev);
/// theta_stage1 is filled once stage 1 of the current step has converged.
/// Rejected attempts never enter the history.
struct TimeHistory {
  std::optional<InterfaceVector> theta_prev;
  std::optional<InterfaceVector> theta_half_prev;
  InterfaceVector theta_n;
  std::optional<InterfaceVector> theta_stage1;
  double dt_prev = 0.0;
  double dt_n = 0.0;
};

/// Line through (t_{n-1}, Theta_{n-1}) and (t_n, Theta_n), evaluated at
/// t_n + c1*dt_n. Falls back to Theta_n on the first step.
InterfaceVector predict_stage1_linear(const TimeHistory& h, double c1);

/// Quadratic through t_{n-1}, t_{n-1} + c1*dt_prev and t_n, evaluated at
/// t_n + c1*dt_n, in Lagrange form. Fallback chain: quadratic -> linear ->
/// constant.
InterfaceVector predict_stage1_quadratic(const TimeHistory& h, double c1);

/// Line through (t_n, Theta_n) and (t_n + c1*dt_n, Theta_1), evaluated at
/// t_n + dt_n: (1 - 1/c1) Theta_n + (1/c1) Theta_1.
InterfaceVector predict_stage2_linear(const TimeHistory& h, double c1);

/// Quadratic through t_{n-1}, t_n and t_n + c1*dt_n, evaluated at t_n + dt_n,
/// in Lagrange form. Falls back to the stage-2 linear predictor on the first
/// step.
InterfaceVector predict_stage2_quadratic(const TimeHistory& h, double c1);

namespace detail {

/// Lagrange extrapolation weights for value nodes at `times`, evaluated at
/// `target`. Weights sum to one by construction (affine reproduction).
Eigen::VectorXd lagrange_weights(const Eigen::VectorXd& times, double target);

}  // namespace detail

}  // namespace tfsi

#endif
