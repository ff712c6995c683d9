// SPDX-License-Identifier: Apache-2.0
#include "tfsi/validate.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "tfsi/acceleration.hpp"
#include "tfsi/history.hpp"
#include "tfsi/material.hpp"
#include "tfsi/predictors.hpp"
#include "tfsi/scalar_ode.hpp"
#include "tfsi/time_loop.hpp"

namespace tfsi {

namespace {

ValidationCase check(const std::string& name, bool ok, const std::string& detail = "") {
  return ValidationCase{name, ok, detail};
}

double sdirk2_stability_function(double z) {
  const SdirkTableau t = SdirkTableau::sdirk2();
  const double a = t.alpha;
  const double num = 1.0 + z * (1.0 - 2.0 * a) + z * z * (a * a - 2.0 * a + 0.5);
  const double den = (1.0 - a * z) * (1.0 - a * z);
  return num / den;
}

double one_sdirk2_step(double rate, double y0, double dt) {
  const SdirkTableau tableau = SdirkTableau::sdirk2();
  ScalarLinearOde ode(rate, y0, tableau, 1e-4);
  InertDirichletPartner partner;
  CouplingConfig coupling;
  coupling.tol = 1e-4;
  StepController ctrl;
  ctrl.tol = 1e-4;
  TimeHistory history;
  history.theta_n = InterfaceVector::Constant(1, y0);
  const StepOutcome out = sdirk2_step(partner, ode, tableau, 0.0, dt, 0.0, coupling, ctrl,
                                      history, /*adaptive=*/false);
  return out.interface_end[0];
}

ValidationCase check_stability_function() {
  double worst = 0.0;
  for (double z : {-0.1, -1.0, -10.0}) {
    const double got = one_sdirk2_step(z, 1.0, 1.0);
    worst = std::max(worst, std::abs(got - sdirk2_stability_function(z)));
  }
  std::ostringstream d;
  d << "max defect " << worst;
  return check("stability function R(z) at z in {-0.1,-1,-10}", worst < 1e-12, d.str());
}

ValidationCase check_order() {
  const SdirkTableau tableau = SdirkTableau::sdirk2();
  std::vector<double> errors;
  for (double dt : {0.1, 0.05, 0.025, 0.0125}) {
    ScalarLinearOde ode(-1.0, 1.0, tableau, 1e-4);
    InertDirichletPartner partner;
    CouplingConfig coupling;
    coupling.tol = 1e-10;
    StepController ctrl;
    TimeLoopConfig loop{1.0, dt, false, 100000};
    run_time_loop(partner, ode, tableau, loop, coupling, ctrl,
                  InterfaceVector::Constant(1, 1.0));
    errors.push_back(std::abs(ode.value() - std::exp(-1.0)));
  }
  // Least-squares slope of log(err) vs log(dt).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double dts[] = {0.1, 0.05, 0.025, 0.0125};
  for (int i = 0; i < 4; ++i) {
    const double x = std::log(dts[i]), y = std::log(errors[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
  std::ostringstream d;
  d << "observed order " << slope;
  return check("SDIRK2 convergence order on y' = -y", slope > 1.8 && slope < 2.2, d.str());
}

ValidationCase check_aitken_scalar() {
  // G(x) = 0.5 x + 1, fixed point 2; accelerated recursion from x0 = 0.
  auto g = [](double x) { return 0.5 * x + 1.0; };
  IterationHistory history;
  AitkenState state;
  history.push(InterfaceVector::Constant(1, 0.0));
  double x = 0.0;
  for (int it = 0; it < 3; ++it) {
    history.push(InterfaceVector::Constant(1, g(x)));
    auto [acc, next] = aitken_update(history, state);
    state = next;
    history.replace_last(acc);
    x = acc[0];
    if (std::abs(x - 2.0) < 1e-12) break;
  }
  std::ostringstream d;
  d << "reached " << x;
  return check("Aitken exactness on G(x) = 0.5x + 1", std::abs(x - 2.0) < 1e-12, d.str());
}

ValidationCase check_vector_extrapolation(unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-0.85, 0.85);
  bool ok = true;
  double worst = 0.0;
  for (int d : {2, 3, 5}) {
    for (int trial = 0; trial < 20 && ok; ++trial) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
      for (int i = 0; i < d; ++i) a(i, i) = uni(rng);
      Eigen::VectorXd fp(d);
      for (int i = 0; i < d; ++i) fp[i] = 1.0 + 0.1 * i;
      const Eigen::VectorXd b = (Eigen::MatrixXd::Identity(d, d) - a) * fp;

      IterationHistory mpe_h, rre_h;
      Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
      mpe_h.push(x);
      rre_h.push(x);
      for (int k = 0; k < d + 1; ++k) {
        x = a * x + b;
        mpe_h.push(x);
        rre_h.push(x);
      }
      const double e1 = (mpe_extrapolate(mpe_h) - fp).norm() / fp.norm();
      const double e2 = (rre_extrapolate(rre_h) - fp).norm() / fp.norm();
      worst = std::max({worst, e1, e2});
      ok = worst < 1e-10;
    }
  }
  std::ostringstream det;
  det << "worst relative defect " << worst;
  return check("MPE/RRE exactness on affine iterations (d = 2,3,5)", ok, det.str());
}

ValidationCase check_predictors(unsigned long seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> uni(0.2, 2.0);
  const double c1 = SdirkTableau::sdirk2().c[0];
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double dt_prev = uni(rng), dt_n = uni(rng);
    const double a = uni(rng), b = uni(rng), c = uni(rng);
    auto quad = [&](double t) { return a + b * t + c * t * t; };
    TimeHistory h;
    h.dt_prev = dt_prev;
    h.dt_n = dt_n;
    h.theta_prev = InterfaceVector::Constant(1, quad(-dt_prev));
    h.theta_half_prev = InterfaceVector::Constant(1, quad(-(1.0 - c1) * dt_prev));
    h.theta_n = InterfaceVector::Constant(1, quad(0.0));
    h.theta_stage1 = InterfaceVector::Constant(1, quad(c1 * dt_n));
    worst = std::max(worst,
                     std::abs(predict_stage1_quadratic(h, c1)[0] - quad(c1 * dt_n)));
    worst = std::max(worst, std::abs(predict_stage2_quadratic(h, c1)[0] - quad(dt_n)));
    // Linear predictors on a linear trajectory.
    auto lin = [&](double t) { return a + b * t; };
    h.theta_prev = InterfaceVector::Constant(1, lin(-dt_prev));
    h.theta_n = InterfaceVector::Constant(1, lin(0.0));
    h.theta_stage1 = InterfaceVector::Constant(1, lin(c1 * dt_n));
    worst = std::max(worst, std::abs(predict_stage1_linear(h, c1)[0] - lin(c1 * dt_n)));
    worst = std::max(worst, std::abs(predict_stage2_linear(h, c1)[0] - lin(dt_n)));
  }
  std::ostringstream det;
  det << "worst defect " << worst;
  return check("predictor degree exactness", worst < 1e-11, det.str());
}

ValidationCase check_material() {
  using M = Material51CrV4;
  bool ok = std::abs(M::lambda_poly(0.0) - 40.1) < 1e-12 &&
            std::abs(M::lambda_poly(100.0) - 44.149) < 1e-12 &&
            std::abs(M::lambda_poly(1000.0) - 39.1) < 1e-10;
  for (double theta = 273.0; theta <= 1300.0 && ok; theta += 1.0) {
    const double c1 = M::cp_branch1(theta), c2 = M::cp_branch2(theta);
    const double cp = M::cp_softmin(theta);
    const double lo = std::min(c1, c2);
    ok = cp >= lo - 1e-9 && cp <= lo + 10.0 * std::log(2.0) + 1e-9;
  }
  return check("51CrV4 material values and soft-min bounds", ok);
}

}  // namespace

std::vector<ValidationCase> run_validation(unsigned long seed) {
  std::vector<ValidationCase> cases;
  cases.push_back(check_stability_function());
  cases.push_back(check_order());
  cases.push_back(check_aitken_scalar());
  cases.push_back(check_vector_extrapolation(seed));
  cases.push_back(check_predictors(seed));
  cases.push_back(check_material());
  return cases;
}

bool report_validation(std::ostream& os, const std::vector<ValidationCase>& cases) {
  bool all = true;
  for (const auto& c : cases) {
    os << (c.passed ? "PASS" : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << '\n';
    all = all && c.passed;
  }
  return all;
}

}  // namespace tfsi
