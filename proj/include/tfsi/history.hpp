// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_HISTORY_HPP
#define TFSI_HISTORY_HPP

#include <vector>

#include "tfsi/types.hpp"

namespace tfsi {

/// Ordered iterates and interface residuals of one fixed-point stage solve,
/// consumed by the convergence accelerators.
///
/// Residuals are recorded at push time: push(theta) appends theta and stores
/// r = theta - previous iterate. replace_last() substitutes an accelerated
/// iterate for the newest entry without rewriting the recorded residual, so
/// the next residual is measured against the accepted (post-acceleration)
/// iterate. With no replacements, residual j always equals
/// iterate(j+1) - iterate(j).
class IterationHistory {
public:
  void push(InterfaceVector theta) {
    if (!iterates_.empty()) {
      if (theta.size() != iterates_.back().size())
        throw ConfigError("IterationHistory: iterate length changed mid-stage");
      residuals_.push_back(theta - iterates_.back());
    }
    iterates_.push_back(std::move(theta));
  }

  /// Replace the newest iterate with its accelerated counterpart.
  void replace_last(const InterfaceVector& theta) {
    if (iterates_.empty()) throw SequencingError("replace_last on empty history");
    if (theta.size() != iterates_.back().size())
      throw ConfigError("IterationHistory: iterate length changed mid-stage");
    iterates_.back() = theta;
  }

  int iterate_count() const { return static_cast<int>(iterates_.size()); }
  int residual_count() const { return static_cast<int>(residuals_.size()); }

  const InterfaceVector& iterate(int j) const { return iterates_.at(j); }
  const InterfaceVector& last_iterate() const { return iterates_.back(); }

  /// Residual r^(j+1) = Theta^(j+1) - Theta^(j), zero-based index j.
  const CouplingResidual& residual(int j) const { return residuals_.at(j); }
  const CouplingResidual& last_residual() const { return residuals_.back(); }
  double last_residual_norm() const { return residuals_.back().norm(); }

  void clear() {
    iterates_.clear();
    residuals_.clear();
  }

private:
  std::vector<InterfaceVector> iterates_;
  std::vector<CouplingResidual> residuals_;
};

}  // namespace tfsi

#endif
