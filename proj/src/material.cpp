// SPDX-License-Identifier: Apache-2.0
#include "tfsi/material.hpp"

#include <cmath>

namespace tfsi {

double Material51CrV4::lambda_poly(double theta) {
  return 40.1 + 0.05 * theta - 1e-4 * theta * theta + 4.9e-8 * theta * theta * theta;
}

double Material51CrV4::lambda_poly_derivative(double theta) {
  return 0.05 - 2e-4 * theta + 1.47e-7 * theta * theta;
}

double Material51CrV4::cp_branch1(double theta) {
  return 34.2 * std::exp(0.0026 * theta) + 421.15;
}

double Material51CrV4::cp_branch1_derivative(double theta) {
  return 34.2 * 0.0026 * std::exp(0.0026 * theta);
}

double Material51CrV4::cp_branch2(double theta) {
  return 956.5 * std::exp(-0.012 * (theta - 900.0)) + 0.45 * theta;
}

double Material51CrV4::cp_branch2_derivative(double theta) {
  return -0.012 * 956.5 * std::exp(-0.012 * (theta - 900.0)) + 0.45;
}

double Material51CrV4::cp_softmin(double theta) {
  const double c1 = cp_branch1(theta);
  const double c2 = cp_branch2(theta);
  // -10 ln((e^{-c1/10} + e^{-c2/10})/2) = min + 10 ln 2 - 10 ln(1 + e^{-|c1-c2|/10})
  const double lo = std::min(c1, c2);
  const double gap = std::abs(c1 - c2);
  return lo + 10.0 * std::log(2.0) - 10.0 * std::log1p(std::exp(-gap / 10.0));
}

double Material51CrV4::cp_softmin_derivative(double theta) {
  const double c1 = cp_branch1(theta);
  const double c2 = cp_branch2(theta);
  // Softmin weights: w1 = sigma((c2 - c1)/10), w2 = 1 - w1.
  const double w1 = 1.0 / (1.0 + std::exp((c1 - c2) / 10.0));
  return w1 * cp_branch1_derivative(theta) + (1.0 - w1) * cp_branch2_derivative(theta);
}

}  // namespace tfsi
