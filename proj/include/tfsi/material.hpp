// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_MATERIAL_HPP
#define TFSI_MATERIAL_HPP

#include <memory>
#include <string>

#include "tfsi/types.hpp"

namespace tfsi {

/// Temperature-dependent thermal material of the structure. All member
/// functions take the field temperature in K.
class Material {
public:
  virtual ~Material() = default;
  virtual double density() const = 0;
  virtual double conductivity(double theta_k) const = 0;
  virtual double conductivity_derivative(double theta_k) const = 0;
  virtual double specific_heat(double theta_k) const = 0;
  virtual double specific_heat_derivative(double theta_k) const = 0;
};

/// Empirical model for the steel 51CrV4: cubic conductivity fit and a
/// soft-min blend of two specific-heat branches, rho = 7836 kg/m^3.
///
/// The fits are empirical in a 900-centered temperature unit; `fit_offset`
/// converts the solver's Kelvin field to the fit argument (273.15 for
/// fits-in-Celsius, 0 to feed Kelvin values directly). The choice is part
/// of the case configuration.
class Material51CrV4 final : public Material {
public:
  explicit Material51CrV4(double fit_offset = 273.15) : fit_offset_(fit_offset) {}

  static constexpr double kDensity = 7836.0;  // kg/m^3

  // Raw fit functions of the fit-unit temperature.
  static double lambda_poly(double theta);
  static double lambda_poly_derivative(double theta);
  static double cp_branch1(double theta);
  static double cp_branch1_derivative(double theta);
  static double cp_branch2(double theta);
  static double cp_branch2_derivative(double theta);
  /// -10 ln((e^{-cp1/10} + e^{-cp2/10})/2), evaluated in log-sum-exp form so
  /// large branch values cannot overflow.
  static double cp_softmin(double theta);
  static double cp_softmin_derivative(double theta);

  double density() const override { return kDensity; }
  double conductivity(double theta_k) const override {
    return lambda_poly(theta_k - fit_offset_);
  }
  double conductivity_derivative(double theta_k) const override {
    return lambda_poly_derivative(theta_k - fit_offset_);
  }
  double specific_heat(double theta_k) const override {
    return cp_softmin(theta_k - fit_offset_);
  }
  double specific_heat_derivative(double theta_k) const override {
    return cp_softmin_derivative(theta_k - fit_offset_);
  }

  double fit_offset() const { return fit_offset_; }

private:
  double fit_offset_;
};

/// Frozen-coefficient material for linear configurations and analytic
/// oracles.
class ConstantMaterial final : public Material {
public:
  ConstantMaterial(double density, double conductivity, double specific_heat)
      : rho_(density), lambda_(conductivity), cp_(specific_heat) {
    if (rho_ <= 0.0 || lambda_ <= 0.0 || cp_ <= 0.0)
      throw ConfigError("ConstantMaterial: parameters must be positive");
  }
  double density() const override { return rho_; }
  double conductivity(double) const override { return lambda_; }
  double conductivity_derivative(double) const override { return 0.0; }
  double specific_heat(double) const override { return cp_; }
  double specific_heat_derivative(double) const override { return 0.0; }

private:
  double rho_, lambda_, cp_;
};

}  // namespace tfsi

#endif
