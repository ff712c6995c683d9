// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_TYPES_HPP
#define TFSI_TYPES_HPP

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfsi {

/// Temperatures (K) at the coupling-interface nodes. This is the quantity
/// that is iterated, relaxed and extrapolated. Entries are absolute
/// temperatures, so the thermal subsolvers require them finite and > 0;
/// synthetic test problems are free to use any real values.
using InterfaceVector = Eigen::VectorXd;

/// Heat flux (W/m^2) at the coupling-interface nodes. Sign convention:
/// positive flux heats the structure.
using InterfaceFlux = Eigen::VectorXd;

/// Componentwise difference of two successive interface iterates.
using CouplingResidual = Eigen::VectorXd;

/// Invalid configuration: inconsistent lengths, bad parameter values,
/// rejected Dirichlet-Neumann role assignment, config file syntax errors.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// The fixed-point loop hit its iteration bound without meeting the
/// termination criterion. Carries the per-sweep residual norms for
/// diagnostics.
class NonconvergenceError : public std::runtime_error {
public:
  NonconvergenceError(const std::string& what, std::vector<double> residual_norms)
      : std::runtime_error(what),
        last_residual_norm(residual_norms.empty() ? 0.0 : residual_norms.back()),
        iterations(static_cast<int>(residual_norms.size())),
        residual_norms(std::move(residual_norms)) {}
  double last_residual_norm;
  int iterations;
  std::vector<double> residual_norms;
};

/// A subsolver failed internally (Newton divergence, singular system,
/// nonphysical state). Propagates to the time loop as a step rejection.
class SolverFailure : public std::runtime_error {
public:
  explicit SolverFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Internal sequencing violation, e.g. a starting vector requested before
/// the previous stage derivatives were recorded. Always a programming error.
class SequencingError : public std::logic_error {
public:
  explicit SequencingError(const std::string& what) : std::logic_error(what) {}
};

/// RMS of err scaled per component by (atol + rtol*|y|).
double scaled_rms(const Eigen::VectorXd& err, const Eigen::VectorXd& y,
                  double atol, double rtol);

bool all_finite(const Eigen::VectorXd& v);

}  // namespace tfsi

#endif
