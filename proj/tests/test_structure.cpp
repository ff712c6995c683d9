#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "oracles.hpp"
#include "tfsi/structure_solver.hpp"

using namespace tfsi;

namespace {

StructureSolver make_solver(StructureMesh mesh, std::shared_ptr<const Material> mat,
                            double tol = 1e-6, bool picard = false) {
  StructureSolver::Options opts;
  opts.tol = tol;
  opts.picard = picard;
  return StructureSolver(mesh, std::move(mat), SdirkTableau::sdirk2(), opts);
}

StageContext stage1(double dt) {
  const SdirkTableau t = SdirkTableau::sdirk2();
  StageContext ctx;
  ctx.stage_index = 1;
  ctx.t_n = 0.0;
  ctx.t_stage = t.c[0] * dt;
  ctx.dt = dt;
  ctx.a_diag = t.alpha;
  ctx.c1 = t.c[0];
  return ctx;
}

StageContext stage2(double dt) {
  StageContext ctx = stage1(dt);
  ctx.stage_index = 2;
  ctx.t_stage = dt;
  return ctx;
}

InterfaceFlux flux(double q) { return InterfaceFlux::Constant(1, q); }

}  // namespace

TEST_CASE("mesh validation and geometry") {
  StructureMesh mesh{0.1, 4, 2};
  CHECK(mesh.node_count() == 9);
  const Eigen::VectorXd x = mesh.nodes();
  CHECK(x[0] == 0.0);
  CHECK(x[8] == doctest::Approx(0.1));
  for (int i = 1; i < 9; ++i) CHECK(x[i] > x[i - 1]);
  CHECK_THROWS_AS((StructureMesh{0.1, 4, 3}.validate()), ConfigError);
  CHECK_THROWS_AS((StructureMesh{-1.0, 4, 1}.validate()), ConfigError);
}

TEST_CASE("single linear element matches the textbook matrices") {
  // Constant coefficients: K = (lambda/h) [[1,-1],[-1,1]],
  // M = rho*c*h/6 [[2,1],[1,2]].
  const double lambda = 3.7, rho = 2.0, cp = 5.0, h = 0.25;
  auto solver = make_solver(StructureMesh{h, 1, 1},
                            std::make_shared<ConstantMaterial>(rho, lambda, cp));
  Eigen::MatrixXd m, k;
  solver.assemble_matrices(Eigen::VectorXd::Constant(2, 300.0), m, k);

  Eigen::MatrixXd k_ref(2, 2), m_ref(2, 2);
  k_ref << 1, -1, -1, 1;
  k_ref *= lambda / h;
  m_ref << 2, 1, 1, 2;
  m_ref *= rho * cp * h / 6.0;
  CHECK((k - k_ref).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((m - m_ref).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("conductivity matrix rows sum to zero, capacity matrix is SPD") {
  auto solver = make_solver(StructureMesh{0.05, 6, 2}, std::make_shared<Material51CrV4>());
  Eigen::MatrixXd m, k;
  solver.assemble_matrices(Eigen::VectorXd::Constant(13, 900.0), m, k);
  CHECK((k.rowwise().sum()).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("zero flux and uniform state is an equilibrium") {
  auto solver = make_solver(StructureMesh{0.05, 8, 2}, std::make_shared<Material51CrV4>());
  solver.set_uniform_temperature(900.0);
  const StageContext ctx = stage1(0.5);
  solver.begin_stage(ctx);
  const InterfaceVector theta = solver.solve_stage(flux(0.0), ctx);
  CHECK(theta[0] == doctest::Approx(900.0).epsilon(1e-13));
  CHECK((solver.newton_residual_history().back()) < 1e-9);
}

TEST_CASE("constant-coefficient stage solve: one Newton step is exact") {
  auto solver = make_solver(StructureMesh{1.0, 4, 1},
                            std::make_shared<ConstantMaterial>(1.0, 1.0, 1.0));
  solver.set_uniform_temperature(10.0);
  const StageContext ctx = stage1(0.1);
  solver.begin_stage(ctx);
  solver.solve_stage(flux(0.5), ctx);
  REQUIRE(!solver.newton_residual_history().empty());
  CHECK(solver.newton_residual_history()[0] < 1e-12);
}

TEST_CASE("analytic Jacobian matches finite differences") {
  const StructureMesh mesh{0.02, 3, 2};
  auto solver = make_solver(mesh, std::make_shared<Material51CrV4>());
  const int n = mesh.node_count();
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uni(820.0, 980.0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd theta(n), s(n);
    for (int i = 0; i < n; ++i) {
      theta[i] = uni(rng);
      s[i] = uni(rng);
    }
    const double dt_a = 0.07;
    const double q = -2000.0;
    const Eigen::MatrixXd jac = solver.stage_jacobian_dense(theta, s, dt_a, q, 0.0);
    const Eigen::MatrixXd jac_fd = oracles::fd_jacobian(
        [&](const Eigen::VectorXd& x) { return solver.stage_residual(x, s, dt_a, q, 0.0); },
        theta, 1e-6);
    CHECK((jac - jac_fd).cwiseAbs().maxCoeff() / jac.cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("Newton converges quadratically near the solution") {
  auto solver = make_solver(StructureMesh{0.05, 10, 2}, std::make_shared<Material51CrV4>(),
                            1e-9);
  solver.set_uniform_temperature(900.0);
  const StageContext ctx = stage1(5.0);
  solver.begin_stage(ctx);
  solver.solve_stage(flux(-4e5), ctx);  // strong cooling makes it nonlinear
  const auto& rs = solver.newton_residual_history();
  REQUIRE(rs.size() >= 2);
  // Normalize by the first residual; quadratic contraction holds between
  // the 1e-3 entry point and the roundoff floor.
  const double r0 = rs[0];
  for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
    const double rk = rs[i] / r0;
    const double rk1 = rs[i + 1] / r0;
    if (rk < 1e-3 && rk > 1e-10) CHECK(rk1 <= 1e4 * rk * rk);
  }
}

TEST_CASE("manufactured solution A + B*x*t is reproduced exactly") {
  // Linear in x and t: interpolation and the stage solves are both exact.
  // Needs the source rho*c*B*x, interface flux -lambda*B*t and far-end flux
  // +lambda*B*t (both counted positive into the domain).
  const double rho = 2.0, cp = 3.0, lambda = 1.5;
  const double a = 700.0, b = 40.0;
  for (int order : {1, 2}) {
    StructureMesh mesh{1.0, 5, order};
    auto solver = make_solver(mesh, std::make_shared<ConstantMaterial>(rho, lambda, cp), 1e-10);
    const Eigen::VectorXd x = mesh.nodes();
    auto exact = [&](double xi, double t) { return a + b * xi * t; };

    solver.set_temperatures(x.unaryExpr([&](double xi) { return exact(xi, 0.0); }));
    solver.set_volumetric_source([&](double xi, double) { return rho * cp * b * xi; });
    solver.set_far_end_flux([&](double t) { return lambda * b * t; });

    const SdirkTableau tab = SdirkTableau::sdirk2();
    const double dt = 0.2;
    double t_n = 0.0;
    for (int step = 0; step < 3; ++step) {
      for (int stage = 1; stage <= 2; ++stage) {
        StageContext ctx = stage == 1 ? stage1(dt) : stage2(dt);
        ctx.t_n = t_n;
        ctx.t_stage = t_n + tab.c[stage - 1] * dt;
        solver.begin_stage(ctx);
        solver.solve_stage(flux(-lambda * b * ctx.t_stage), ctx);
        solver.end_stage(ctx);
      }
      solver.end_step();
      t_n += dt;
    }
    const Eigen::VectorXd expected = x.unaryExpr([&](double xi) { return exact(xi, t_n); });
    CHECK((solver.temperatures() - expected).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("manufactured sine solution converges at the element order") {
  // theta = 900 + amp * t * sin(pi x / L): linear in t (time-exact stages),
  // smooth in x; nodal errors between two refinements shrink at least like
  // h^{order+1}.
  const double rho = 5.0, cp = 2.0, lambda = 1.3, amp = 10.0, t_end = 0.4;
  for (int order : {1, 2}) {
    std::vector<double> errors;
    for (int elems : {8, 16}) {
      StructureMesh mesh{1.0, elems, order};
      const double pi_l = M_PI / mesh.length;
      auto solver =
          make_solver(mesh, std::make_shared<ConstantMaterial>(rho, lambda, cp), 1e-11);
      const Eigen::VectorXd x = mesh.nodes();
      auto exact = [&](double xi, double t) { return 900.0 + amp * t * std::sin(pi_l * xi); };
      solver.set_temperatures(x.unaryExpr([&](double xi) { return exact(xi, 0.0); }));
      solver.set_volumetric_source([&](double xi, double t) {
        return rho * cp * amp * std::sin(pi_l * xi) +
               lambda * amp * t * pi_l * pi_l * std::sin(pi_l * xi);
      });
      // theta_x = amp t (pi/L) cos(pi x/L); the into-domain flux is
      // lambda theta_x n_x, giving -lambda amp t pi/L at both ends (the hot
      // bump loses heat through both faces).
      solver.set_far_end_flux([&](double t) { return -lambda * amp * t * pi_l; });

      const SdirkTableau tab = SdirkTableau::sdirk2();
      const double dt = 0.1;
      double t_n = 0.0;
      while (t_n < t_end - 1e-12) {
        for (int stage = 1; stage <= 2; ++stage) {
          StageContext ctx = stage == 1 ? stage1(dt) : stage2(dt);
          ctx.t_n = t_n;
          ctx.t_stage = t_n + tab.c[stage - 1] * dt;
          solver.begin_stage(ctx);
          solver.solve_stage(flux(-lambda * amp * ctx.t_stage * pi_l), ctx);
          solver.end_stage(ctx);
        }
        solver.end_step();
        t_n += dt;
      }
      const Eigen::VectorXd expected =
          x.unaryExpr([&](double xi) { return exact(xi, t_n); });
      errors.push_back((solver.temperatures() - expected).cwiseAbs().maxCoeff());
    }
    const double observed = std::log2(errors[0] / errors[1]);
    CHECK(observed > order + 0.8);
  }
}

TEST_CASE("energy is conserved with zero boundary flux and frozen coefficients") {
  auto solver = make_solver(StructureMesh{0.05, 10, 2},
                            std::make_shared<ConstantMaterial>(7836.0, 40.0, 600.0), 1e-10);
  Eigen::VectorXd init(21);
  for (int i = 0; i < 21; ++i) init[i] = 800.0 + 10.0 * std::sin(0.7 * i);
  solver.set_temperatures(init);
  const double e0 = solver.thermal_energy();

  const SdirkTableau tab = SdirkTableau::sdirk2();
  const double dt = 2.0;
  for (int stage = 1; stage <= 2; ++stage) {
    StageContext ctx = stage == 1 ? stage1(dt) : stage2(dt);
    ctx.t_stage = tab.c[stage - 1] * dt;
    solver.begin_stage(ctx);
    solver.solve_stage(flux(0.0), ctx);
    solver.end_stage(ctx);
  }
  solver.end_step();
  CHECK(solver.thermal_energy() == doctest::Approx(e0).epsilon(1e-10));
}

TEST_CASE("maximum principle under interface cooling") {
  auto solver = make_solver(StructureMesh{0.05, 20, 2}, std::make_shared<Material51CrV4>());
  solver.set_uniform_temperature(900.0);
  const SdirkTableau tab = SdirkTableau::sdirk2();
  const double dt = 1.0;
  double prev_max = solver.temperatures().maxCoeff();
  double t_n = 0.0;
  for (int step = 0; step < 5; ++step) {
    for (int stage = 1; stage <= 2; ++stage) {
      StageContext ctx = stage == 1 ? stage1(dt) : stage2(dt);
      ctx.t_n = t_n;
      ctx.t_stage = t_n + tab.c[stage - 1] * dt;
      solver.begin_stage(ctx);
      solver.solve_stage(flux(-5e4), ctx);
      solver.end_stage(ctx);
    }
    solver.end_step();
    t_n += dt;
    const double now_max = solver.temperatures().maxCoeff();
    CHECK(now_max <= prev_max + 1e-9 * prev_max);
    prev_max = now_max;
  }
}

TEST_CASE("save/restore round-trips bitwise") {
  auto solver = make_solver(StructureMesh{0.05, 6, 2}, std::make_shared<Material51CrV4>());
  solver.set_uniform_temperature(900.0);
  solver.save_state();
  const Eigen::VectorXd before = solver.temperatures();

  const StageContext ctx = stage1(0.5);
  solver.begin_stage(ctx);
  solver.solve_stage(flux(-1e4), ctx);
  solver.end_stage(ctx);
  solver.restore_state();

  const Eigen::VectorXd after = solver.temperatures();
  REQUIRE(before.size() == after.size());
  for (int i = 0; i < before.size(); ++i) CHECK(before[i] == after[i]);
}

TEST_CASE("stage solves are deterministic for fixed inputs") {
  auto run_once = [] {
    auto solver = make_solver(StructureMesh{0.05, 8, 2}, std::make_shared<Material51CrV4>());
    solver.set_uniform_temperature(900.0);
    const StageContext ctx = stage1(0.5);
    solver.begin_stage(ctx);
    solver.solve_stage(flux(-1e4), ctx);
    return Eigen::VectorXd(solver.temperatures());
  };
  const Eigen::VectorXd a = run_once();
  const Eigen::VectorXd b = run_once();
  for (int i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("nonphysical states are rejected") {
  auto solver = make_solver(StructureMesh{0.05, 4, 1}, std::make_shared<Material51CrV4>());
  CHECK_THROWS_AS(solver.set_uniform_temperature(-5.0), SolverFailure);
}

TEST_CASE("picard fallback converges on the nonlinear problem") {
  auto solver = make_solver(StructureMesh{0.05, 8, 2}, std::make_shared<Material51CrV4>(),
                            1e-6, /*picard=*/true);
  solver.set_uniform_temperature(900.0);
  const StageContext ctx = stage1(0.5);
  solver.begin_stage(ctx);
  const InterfaceVector theta = solver.solve_stage(flux(-1e4), ctx);
  CHECK(theta[0] < 900.0);
  CHECK(theta[0] > 800.0);
}
