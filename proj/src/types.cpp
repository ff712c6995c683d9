// SPDX-License-Identifier: Apache-2.0
#include "tfsi/types.hpp"

#include <cmath>

namespace tfsi {

double scaled_rms(const Eigen::VectorXd& err, const Eigen::VectorXd& y,
                  double atol, double rtol) {
  if (err.size() != y.size())
    throw ConfigError("scaled_rms: length mismatch");
  if (err.size() == 0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double w = err[i] / (atol + rtol * std::abs(y[i]));
    acc += w * w;
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

bool all_finite(const Eigen::VectorXd& v) {
  return v.allFinite();
}

}  // namespace tfsi
