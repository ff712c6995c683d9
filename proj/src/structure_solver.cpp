// SPDX-License-Identifier: Apache-2.0
#include "tfsi/structure_solver.hpp"

#include <cmath>

namespace tfsi {

namespace {

// Reference shape functions on [-1, 1].
void shape_values(int order, double xi, double* n, double* dn) {
  if (order == 1) {
    n[0] = 0.5 * (1.0 - xi);
    n[1] = 0.5 * (1.0 + xi);
    dn[0] = -0.5;
    dn[1] = 0.5;
  } else {
    n[0] = 0.5 * xi * (xi - 1.0);
    n[1] = 1.0 - xi * xi;
    n[2] = 0.5 * xi * (xi + 1.0);
    dn[0] = xi - 0.5;
    dn[1] = -2.0 * xi;
    dn[2] = xi + 0.5;
  }
}

}  // namespace

void StructureMesh::validate() const {
  if (length <= 0.0) throw ConfigError("StructureMesh: length must be positive");
  if (elements < 1) throw ConfigError("StructureMesh: need at least one element");
  if (order != 1 && order != 2) throw ConfigError("StructureMesh: order must be 1 or 2");
}

Eigen::VectorXd StructureMesh::nodes() const {
  const int n = node_count();
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = i * node_spacing();
  return x;
}

StructureSolver::StructureSolver(StructureMesh mesh, std::shared_ptr<const Material> material,
                                 SdirkTableau tableau, Options opts)
    : mesh_(mesh), material_(std::move(material)), tableau_(tableau), opts_(opts) {
  mesh_.validate();
  if (!material_) throw ConfigError("StructureSolver: no material");
  if (opts_.tol <= 0.0) throw ConfigError("StructureSolver: tol must be positive");
  if (mesh_.order == 1) {
    const double g = 1.0 / std::sqrt(3.0);
    quad_ = {{-g, g}, {1.0, 1.0}};
  } else {
    const double g = std::sqrt(3.0 / 5.0);
    quad_ = {{-g, 0.0, g}, {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}};
  }
  state_ = Eigen::VectorXd::Constant(mesh_.node_count(), 293.15);
}

void StructureSolver::set_uniform_temperature(double theta_k) {
  set_temperatures(Eigen::VectorXd::Constant(mesh_.node_count(), theta_k));
}

void StructureSolver::set_temperatures(const Eigen::VectorXd& theta) {
  if (theta.size() != mesh_.node_count())
    throw ConfigError("StructureSolver: temperature vector size mismatch");
  check_physical(theta);
  state_ = theta;
  stage_derivatives_.clear();
  stage_open_ = false;
}

void StructureSolver::set_volumetric_source(std::function<double(double, double)> source) {
  source_ = std::move(source);
}

void StructureSolver::set_far_end_flux(std::function<double(double)> flux) {
  far_flux_ = std::move(flux);
}

void StructureSolver::check_physical(const Eigen::VectorXd& theta) const {
  if (!theta.allFinite() || (theta.array() <= 0.0).any())
    throw SolverFailure("StructureSolver: nonphysical nodal temperature");
}

void StructureSolver::assemble_system(const Eigen::VectorXd& theta, const Eigen::VectorXd& s,
                                      double dt_a, double q_interface, double t_stage,
                                      Eigen::VectorXd& residual, BandedMatrix* jacobian) const {
  const int order = mesh_.order;
  const int nloc = order + 1;
  const double h = mesh_.length / mesh_.elements;
  const double jac = 0.5 * h;
  const double rho = material_->density();

  residual.setZero(mesh_.node_count());
  if (jacobian) jacobian->set_zero();

  double n[3], dn[3];
  for (int e = 0; e < mesh_.elements; ++e) {
    const int base = e * order;
    const double x_left = e * h;
    for (std::size_t q = 0; q < quad_.xi.size(); ++q) {
      shape_values(order, quad_.xi[q], n, dn);
      const double wq = quad_.w[q] * jac;
      double th = 0.0, sh = 0.0, dth = 0.0;
      for (int a = 0; a < nloc; ++a) {
        th += n[a] * theta[base + a];
        sh += n[a] * s[base + a];
        dth += dn[a] / jac * theta[base + a];
      }
      const double cp = material_->specific_heat(th);
      const double lam = material_->conductivity(th);
      const double x_q = x_left + 0.5 * h * (quad_.xi[q] + 1.0);
      const double g = source_ ? source_(x_q, t_stage) : 0.0;

      for (int a = 0; a < nloc; ++a) {
        const double dna = dn[a] / jac;
        residual[base + a] += wq * (rho * cp * n[a] * (th - sh) +
                                    dt_a * (lam * dna * dth - g * n[a]));
      }
      if (jacobian) {
        const double dcp = opts_.picard ? 0.0 : material_->specific_heat_derivative(th);
        const double dlam = opts_.picard ? 0.0 : material_->conductivity_derivative(th);
        for (int a = 0; a < nloc; ++a) {
          const double dna = dn[a] / jac;
          for (int b = 0; b < nloc; ++b) {
            const double dnb = dn[b] / jac;
            const double v = wq * (rho * (cp * n[b] + dcp * n[b] * (th - sh)) * n[a] +
                                   dt_a * (lam * dnb + dlam * n[b] * dth) * dna);
            jacobian->add(base + a, base + b, v);
          }
        }
      }
    }
  }

  // Boundary flux terms, positive into the domain.
  residual[0] -= dt_a * q_interface;
  if (far_flux_) residual[mesh_.node_count() - 1] -= dt_a * far_flux_(t_stage);
}

Eigen::VectorXd StructureSolver::stage_residual(const Eigen::VectorXd& theta,
                                                const Eigen::VectorXd& s, double dt_a,
                                                double q_interface, double t_stage) const {
  Eigen::VectorXd r;
  assemble_system(theta, s, dt_a, q_interface, t_stage, r, nullptr);
  return r;
}

Eigen::MatrixXd StructureSolver::stage_jacobian_dense(const Eigen::VectorXd& theta,
                                                      const Eigen::VectorXd& s, double dt_a,
                                                      double q_interface, double t_stage) const {
  Eigen::VectorXd r;
  BandedMatrix j(mesh_.node_count(), mesh_.order, mesh_.order);
  assemble_system(theta, s, dt_a, q_interface, t_stage, r, &j);
  return j.to_dense();
}

void StructureSolver::assemble_matrices(const Eigen::VectorXd& theta, Eigen::MatrixXd& capacity,
                                        Eigen::MatrixXd& conductivity) const {
  const int order = mesh_.order;
  const int nloc = order + 1;
  const int nn = mesh_.node_count();
  const double h = mesh_.length / mesh_.elements;
  const double jac = 0.5 * h;
  const double rho = material_->density();
  capacity = Eigen::MatrixXd::Zero(nn, nn);
  conductivity = Eigen::MatrixXd::Zero(nn, nn);

  double n[3], dn[3];
  for (int e = 0; e < mesh_.elements; ++e) {
    const int base = e * order;
    for (std::size_t q = 0; q < quad_.xi.size(); ++q) {
      shape_values(order, quad_.xi[q], n, dn);
      const double wq = quad_.w[q] * jac;
      double th = 0.0;
      for (int a = 0; a < nloc; ++a) th += n[a] * theta[base + a];
      const double cp = material_->specific_heat(th);
      const double lam = material_->conductivity(th);
      for (int a = 0; a < nloc; ++a)
        for (int b = 0; b < nloc; ++b) {
          capacity(base + a, base + b) += wq * rho * cp * n[a] * n[b];
          conductivity(base + a, base + b) += wq * lam * (dn[a] / jac) * (dn[b] / jac);
        }
    }
  }
}

void StructureSolver::begin_stage(const StageContext& ctx) {
  starting_vector_ = compute_starting_vector(state_, stage_derivatives_, tableau_,
                                             ctx.stage_index, ctx.dt);
  current_ = starting_vector_;
  stage_open_ = true;
}

InterfaceVector StructureSolver::solve_stage(const InterfaceFlux& boundary_flux,
                                             const StageContext& ctx) {
  if (!stage_open_) throw SequencingError("StructureSolver: solve_stage before begin_stage");
  if (boundary_flux.size() != 1)
    throw ConfigError("StructureSolver: expected a single interface flux value");
  const double dt_a = ctx.dt * ctx.a_diag;
  const double q = boundary_flux[0];

  BandedMatrix jac(mesh_.node_count(), mesh_.order, mesh_.order);
  Eigen::VectorXd residual;
  newton_residuals_.clear();

  Eigen::VectorXd theta = current_;
  for (int it = 0; it < opts_.max_newton_iterations; ++it) {
    assemble_system(theta, starting_vector_, dt_a, q, ctx.t_stage, residual, &jac);
    const Eigen::VectorXd delta = jac.lu_solve(residual);
    theta -= delta;
    newton_residuals_.push_back(
        stage_residual(theta, starting_vector_, dt_a, q, ctx.t_stage).norm());
    if (scaled_rms(delta, theta, opts_.inner_tol(), opts_.inner_tol()) <= 1.0) {
      check_physical(theta);
      current_ = theta;
      InterfaceVector out(1);
      out[0] = current_[0];
      return out;
    }
  }
  throw SolverFailure("StructureSolver: Newton failed to converge in " +
                      std::to_string(opts_.max_newton_iterations) + " iterations");
}

void StructureSolver::end_stage(const StageContext& ctx) {
  if (!stage_open_) throw SequencingError("StructureSolver: end_stage before begin_stage");
  const Eigen::VectorXd k = (current_ - starting_vector_) / (ctx.dt * ctx.a_diag);
  if (static_cast<int>(stage_derivatives_.size()) != ctx.stage_index - 1)
    throw SequencingError("StructureSolver: stage derivatives out of order");
  stage_derivatives_.push_back(k);
  step_solution_ = current_;
  last_dt_ = ctx.dt;
  stage_open_ = false;
}

void StructureSolver::end_step() {
  if (stage_derivatives_.size() != 2)
    throw SequencingError("StructureSolver: end_step before both stages finished");
  state_ = step_solution_;  // stiffly accurate: stage 2 is the step solution
  stage_derivatives_.clear();
}

double StructureSolver::local_error_estimate() const {
  if (stage_derivatives_.size() != 2)
    throw SequencingError("StructureSolver: error estimate needs both stage derivatives");
  const Eigen::VectorXd diff =
      last_dt_ * ((tableau_.b[0] - tableau_.b_hat[0]) * stage_derivatives_[0] +
                  (tableau_.b[1] - tableau_.b_hat[1]) * stage_derivatives_[1]);
  return scaled_rms(diff, step_solution_, 1.0, 1.0);
}

void StructureSolver::save_state() {
  backup_ = Backup{state_, stage_derivatives_, last_dt_};
  has_backup_ = true;
}

void StructureSolver::restore_state() {
  if (!has_backup_) throw SequencingError("StructureSolver: restore without save");
  state_ = backup_.state;
  stage_derivatives_ = backup_.stage_derivatives;
  last_dt_ = backup_.last_dt;
  stage_open_ = false;
}

InterfaceVector StructureSolver::interface_guess(const StageContext&) const {
  if (!stage_open_) throw SequencingError("StructureSolver: interface_guess before begin_stage");
  InterfaceVector out(1);
  out[0] = starting_vector_[0];
  return out;
}

double StructureSolver::thermal_energy() const {
  Eigen::MatrixXd m, k;
  assemble_matrices(state_, m, k);
  return (m * state_).sum();
}

double StructureSolver::min_conductivity(double lo_k, double hi_k) const {
  double best = material_->conductivity(lo_k);
  for (double t = lo_k; t <= hi_k; t += 1.0)
    best = std::min(best, material_->conductivity(t));
  return best;
}

}  // namespace tfsi
