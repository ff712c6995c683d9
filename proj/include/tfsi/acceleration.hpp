// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_ACCELERATION_HPP
#define TFSI_ACCELERATION_HPP

#include <utility>

#include "tfsi/history.hpp"
#include "tfsi/types.hpp"

namespace tfsi {

/// State of the Aitken relaxation recursion. The initial factor 0.8 is the
/// value reported to work well for thermal interface problems; it is reset
/// at every new stage solve.
struct AitkenState {
  double omega = 0.8;
};

/// One Aitken relaxation update.
///
/// With at least two residuals, the relaxation factor follows the recursion
///   omega' = -omega * <r_prev, r_new - r_prev> / |r_new - r_prev|^2
/// and the returned iterate is omega' * theta_new + (1 - omega') * theta_prev.
/// With exactly one residual the prescribed factor in `state` is applied
/// unchanged; with none the raw iterate is returned.
///
/// A vanishing residual difference signals a converged or cycling iteration;
/// the raw iterate is returned and the factor kept.
std::pair<InterfaceVector, AitkenState> aitken_update(const IterationHistory& history,
                                                      AitkenState state);

/// Minimal polynomial extrapolation over the (optionally windowed) history.
///
/// Solves min_c |sum_{j<m-1} c_j r_j + r_{m-1}|_2 by QR least squares, fixes
/// the newest coefficient to one, normalizes gamma_j = c_j / sum(c) and
/// returns sum gamma_j Theta^(j) over the m oldest iterates of the window.
/// Needs at least two residuals. A vanishing coefficient sum is degenerate;
/// the raw newest iterate is returned. Rank-deficient residual matrices get
/// the minimum-norm least-squares solution.
InterfaceVector mpe_extrapolate(const IterationHistory& history, int window = 0);

/// Reduced rank extrapolation: minimizes |sum gamma_j r_j|_2 subject to
/// sum gamma_j = 1 and returns sum gamma_j Theta^(j). Needs one residual;
/// with exactly one the constraint forces gamma_0 = 1. The constraint is
/// eliminated exactly, so the computed weights sum to one up to roundoff.
InterfaceVector rre_extrapolate(const IterationHistory& history, int window = 0);

}  // namespace tfsi

#endif
