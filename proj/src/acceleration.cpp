// SPDX-License-Identifier: Apache-2.0
#include "tfsi/acceleration.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace tfsi {

namespace {

// Number of trailing residuals to use: full history unless a window is set.
int effective_window(const IterationHistory& h, int window) {
  const int m = h.residual_count();
  return (window > 0 && window < m) ? window : m;
}

// gamma-weighted combination of the m window iterates ending at the iterate
// paired with the newest used residual (exclusive), i.e. x_base .. x_base+m-1.
InterfaceVector combine(const IterationHistory& h, const Eigen::VectorXd& gamma, int base) {
  InterfaceVector out = Eigen::VectorXd::Zero(h.iterate(0).size());
  for (int j = 0; j < gamma.size(); ++j) out += gamma[j] * h.iterate(base + j);
  return out;
}

}  // namespace

std::pair<InterfaceVector, AitkenState> aitken_update(const IterationHistory& history,
                                                      AitkenState state) {
  const int m = history.residual_count();
  if (m == 0) return {history.last_iterate(), state};

  const int n = history.iterate_count();
  if (m == 1) {
    // First iteration: apply the prescribed factor, keep it for the recursion.
    InterfaceVector relaxed = state.omega * history.iterate(n - 1) +
                              (1.0 - state.omega) * history.iterate(n - 2);
    return {relaxed, state};
  }

  const CouplingResidual& r_prev = history.residual(m - 2);
  const CouplingResidual& r_new = history.residual(m - 1);
  const Eigen::VectorXd diff = r_new - r_prev;
  const double denom = diff.squaredNorm();
  // Stagnation guard: identical consecutive residuals (converged or cycling).
  const double scale = std::max(r_new.squaredNorm(), r_prev.squaredNorm());
  if (denom <= 1e-28 * scale || denom == 0.0) return {history.last_iterate(), state};

  state.omega = -state.omega * r_prev.dot(diff) / denom;
  InterfaceVector relaxed = state.omega * history.iterate(n - 1) +
                            (1.0 - state.omega) * history.iterate(n - 2);
  return {relaxed, state};
}

InterfaceVector mpe_extrapolate(const IterationHistory& history, int window) {
  const int m = effective_window(history, window);
  if (m < 2) throw SequencingError("mpe_extrapolate needs at least two residuals");
  const int res_base = history.residual_count() - m;
  const int it_base = history.iterate_count() - m - 1;
  const auto dim = history.iterate(0).size();

  // Unknown coefficients on the m-1 oldest window residuals, unit coefficient
  // on the newest.
  Eigen::MatrixXd r_mat(dim, m - 1);
  for (int j = 0; j < m - 1; ++j) r_mat.col(j) = history.residual(res_base + j);
  const Eigen::VectorXd rhs = -history.residual(res_base + m - 1);
  const Eigen::VectorXd c = r_mat.completeOrthogonalDecomposition().solve(rhs);

  const double sum = c.sum() + 1.0;
  if (std::abs(sum) <= 1e-14 * (c.cwiseAbs().sum() + 1.0))
    return history.last_iterate();  // degenerate normalization

  Eigen::VectorXd gamma(m);
  gamma.head(m - 1) = c / sum;
  gamma[m - 1] = 1.0 / sum;
  return combine(history, gamma, it_base);
}

InterfaceVector rre_extrapolate(const IterationHistory& history, int window) {
  const int m = effective_window(history, window);
  if (m < 1) throw SequencingError("rre_extrapolate needs at least one residual");
  const int res_base = history.residual_count() - m;
  const int it_base = history.iterate_count() - m - 1;
  const auto dim = history.iterate(0).size();

  Eigen::VectorXd gamma(m);
  if (m == 1) {
    gamma[0] = 1.0;
    return combine(history, gamma, it_base);
  }

  // Eliminate the constraint against the newest residual: gamma_j = beta_j
  // for j < m-1, gamma_{m-1} = 1 - sum(beta), and minimize
  // |r_new + sum beta_j (r_j - r_new)|_2. Anchoring on the newest entry
  // keeps the minimum-norm solution of rank-deficient histories (e.g.
  // single-node interfaces) centered on the freshest iterate.
  const CouplingResidual& r_new = history.residual(res_base + m - 1);
  Eigen::MatrixXd v_mat(dim, m - 1);
  for (int j = 0; j < m - 1; ++j) v_mat.col(j) = history.residual(res_base + j) - r_new;
  const Eigen::VectorXd beta = v_mat.completeOrthogonalDecomposition().solve(-r_new);

  gamma.head(m - 1) = beta;
  gamma[m - 1] = 1.0 - beta.sum();
  return combine(history, gamma, it_base);
}

}  // namespace tfsi
