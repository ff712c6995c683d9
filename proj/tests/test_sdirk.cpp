#include <doctest.h>

#include <cmath>

#include "tfsi/sdirk.hpp"

using namespace tfsi;

TEST_CASE("sdirk2 tableau structure") {
  const SdirkTableau t = SdirkTableau::sdirk2();
  CHECK(t.alpha == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK(t.stiffly_accurate());
  CHECK(t.weight_sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.embedded_weight_sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.c[0] == t.alpha);
  CHECK(t.c[1] == 1.0);
  // The embedded companion must differ from b, otherwise the estimate is 0.
  CHECK(std::abs(t.b[0] - t.b_hat[0]) > 1e-3);
  // Embedded pair is order 1, not 2: b_hat . c != 1/2.
  CHECK(std::abs(t.b_hat[0] * t.c[0] + t.b_hat[1] * t.c[1] - 0.5) > 1e-3);
}

TEST_CASE("starting vectors accumulate prior stage derivatives") {
  const SdirkTableau t = SdirkTableau::sdirk2();
  Eigen::VectorXd u = Eigen::VectorXd::Constant(1, 1.0);

  SUBCASE("stage 1 is the old solution") {
    CHECK(compute_starting_vector(u, {}, t, 1, 0.5)[0] == 1.0);
  }
  SUBCASE("stage 2 with zero derivative is the old solution") {
    CHECK(compute_starting_vector(u, {Eigen::VectorXd::Zero(1)}, t, 2, 0.5)[0] == 1.0);
  }
  SUBCASE("stage 2 scalar value") {
    // 1 + 0.5 * (1 - alpha) * 2 with alpha = 1 - sqrt(2)/2.
    const Eigen::VectorXd k1 = Eigen::VectorXd::Constant(1, 2.0);
    CHECK(compute_starting_vector(u, {k1}, t, 2, 0.5)[0] ==
          doctest::Approx(1.7071067811865476).epsilon(1e-15));
  }
  SUBCASE("missing derivative is a sequencing error") {
    CHECK_THROWS_AS(compute_starting_vector(u, {}, t, 2, 0.5), SequencingError);
  }
}

TEST_CASE("error aggregation is the maximum") {
  CHECK(aggregate_error(0.0, 0.0) == 0.0);
  CHECK(aggregate_error(1e-5, 3e-5) == 3e-5);
  CHECK(aggregate_error(4e-2, 0.0) == 4e-2);
  CHECK_THROWS_AS(aggregate_error(-1.0, 0.0), SequencingError);
}

TEST_CASE("step controller") {
  StepController ctrl;
  ctrl.tol = 1e-4;
  ctrl.dt_min = 1e-12;
  ctrl.dt_max = 1e12;

  SUBCASE("unit ratio shrinks by the safety factor") {
    CHECK(next_step_size(1e-4, 1.0, ctrl) == doctest::Approx(0.9));
  }
  SUBCASE("growth capped at f_max") {
    // 0.9 * sqrt(100) = 9 > 5 -> clamp.
    CHECK(next_step_size(1e-6, 1.0, ctrl) == doctest::Approx(5.0));
  }
  SUBCASE("shrink floored at f_min") {
    // 0.9 * sqrt(1/100) = 0.09 < 0.2 -> clamp.
    CHECK(next_step_size(1e-2, 1.0, ctrl) == doctest::Approx(0.2));
  }
  SUBCASE("zero estimate grows by f_max") {
    CHECK(next_step_size(0.0, 2.0, ctrl) == doctest::Approx(10.0));
  }
  SUBCASE("dt bounds clamp the result") {
    ctrl.dt_max = 3.0;
    CHECK(next_step_size(0.0, 2.0, ctrl) == doctest::Approx(3.0));
    ctrl.dt_min = 0.5;
    CHECK(next_step_size(1.0, 1.0, ctrl) == doctest::Approx(0.5));
  }
  SUBCASE("validation rejects inverted limits") {
    ctrl.shrink_limit = 2.0;
    CHECK_THROWS_AS(ctrl.validate(), ConfigError);
  }
}
