// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_VALIDATE_HPP
#define TFSI_VALIDATE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tfsi {

struct ValidationCase {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick analytic-oracle self-checks: tableau structure and stability
/// function, integration order, Aitken/MPE/RRE exactness on affine maps,
/// predictor degree exactness, material model values and bounds. Randomized
/// sweeps draw from the given seed.
std::vector<ValidationCase> run_validation(unsigned long seed);

/// Prints one pass/fail line per case; returns true when all passed.
bool report_validation(std::ostream& os, const std::vector<ValidationCase>& cases);

}  // namespace tfsi

#endif
