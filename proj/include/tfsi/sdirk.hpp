// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_SDIRK_HPP
#define TFSI_SDIRK_HPP

#include <array>

#include "tfsi/types.hpp"

namespace tfsi {

/// Two-stage singly diagonally implicit Runge-Kutta tableau of order 2,
/// stiffly accurate (b equals the last row of A), with an embedded order-1
/// companion for local error estimation.
struct SdirkTableau {
  double alpha;                  // diagonal coefficient a_ii
  double a21;                    // subdiagonal entry
  std::array<double, 2> c;       // abscissae
  std::array<double, 2> b;       // quadrature weights
  std::array<double, 2> b_hat;   // embedded weights, order 1

  /// alpha = 1 - sqrt(2)/2 with Ellsiepen's embedded companion
  /// b_hat = (1 - alpha_hat, alpha_hat), alpha_hat = 2 - (5/4) sqrt(2).
  static SdirkTableau sdirk2();

  bool stiffly_accurate(double tol = 1e-14) const;
  double weight_sum() const { return b[0] + b[1]; }
  double embedded_weight_sum() const { return b_hat[0] + b_hat[1]; }
};

/// Everything a subsolver needs to know about the Runge-Kutta stage it is
/// being asked to solve.
struct StageContext {
  int stage_index = 1;     // 1 or 2
  double t_stage = 0.0;    // t_n + c_i * dt
  double t_n = 0.0;
  double dt = 0.0;         // current step size
  double dt_prev = 0.0;    // previous accepted step size (0 on the first step)
  double a_diag = 0.0;     // a_ii
  double c1 = 0.0;         // first abscissa
};

/// Elementary I-controller with order-1 embedded error, exponent 1/2.
struct StepController {
  double tol = 1e-4;         // TOL, shared with the coupling termination test
  double safety = 0.9;
  double shrink_limit = 0.2; // f_min
  double growth_limit = 5.0; // f_max
  double dt_min = 1e-12;
  double dt_max = 1e12;

  void validate() const;
};

/// Combined local error of the two subsolvers: the more conservative of the
/// two separately reported estimates.
double aggregate_error(double est_fluid, double est_structure);

/// dt * clamp(safety * sqrt(TOL/est), [f_min, f_max]), clamped to
/// [dt_min, dt_max]. A zero estimate grows by the full growth limit.
double next_step_size(double est, double dt, const StepController& ctrl);

/// Starting vector s_i = u_n + dt * sum_{j<i} a_ij k_j of a DIRK stage;
/// stage 1 reduces to u_n. Prior stage derivatives must all be recorded.
Eigen::VectorXd compute_starting_vector(const Eigen::VectorXd& state_n,
                                        const std::vector<Eigen::VectorXd>& stage_derivatives,
                                        const SdirkTableau& tableau, int stage_index,
                                        double dt);

}  // namespace tfsi

#endif
