// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_STRUCTURE_SOLVER_HPP
#define TFSI_STRUCTURE_SOLVER_HPP

#include <functional>
#include <memory>
#include <vector>

#include "tfsi/banded.hpp"
#include "tfsi/coupling.hpp"
#include "tfsi/material.hpp"
#include "tfsi/sdirk.hpp"

namespace tfsi {

/// Uniform 1D finite-element mesh on [0, length] with the coupling
/// interface at x = 0.
struct StructureMesh {
  double length = 0.05;   // m
  int elements = 50;
  int order = 2;          // element order, 1 or 2

  void validate() const;
  int node_count() const { return elements * order + 1; }
  double node_spacing() const { return length / (elements * order); }
  Eigen::VectorXd nodes() const;
};

/// Nonlinear 1D heat-conduction subsolver, the Neumann partner of the
/// coupling: Galerkin finite elements with temperature-dependent capacity
/// and conductivity, Newton inner solver for the backward-Euler-type stage
/// systems, banded direct linear solves.
class StructureSolver final : public NeumannSubsolver {
public:
  struct Options {
    double tol = 1e-4;              // time-integration tolerance TOL
    int max_newton_iterations = 25;
    bool picard = false;            // frozen-coefficient Jacobian fallback

    // Inner solves stay well below the coupling tolerance.
    double inner_tol() const { return tol / 100.0; }
  };

  StructureSolver(StructureMesh mesh, std::shared_ptr<const Material> material,
                  SdirkTableau tableau, Options opts);

  void set_uniform_temperature(double theta_k);
  void set_temperatures(const Eigen::VectorXd& theta);
  const Eigen::VectorXd& temperatures() const { return state_; }
  const StructureMesh& mesh() const { return mesh_; }
  const Material& material() const { return *material_; }

  /// Volumetric heat source g(x, t) (W/m^3) and prescribed flux at the far
  /// end (W/m^2, positive into the domain); both default to zero. Used for
  /// manufactured-solution studies.
  void set_volumetric_source(std::function<double(double, double)> source);
  void set_far_end_flux(std::function<double(double)> flux);

  // Subsolver lifecycle --------------------------------------------------
  void begin_stage(const StageContext& ctx) override;
  InterfaceVector solve_stage(const InterfaceFlux& boundary_flux,
                              const StageContext& ctx) override;
  void end_stage(const StageContext& ctx) override;
  void end_step() override;
  double local_error_estimate() const override;
  void save_state() override;
  void restore_state() override;
  InterfaceVector interface_guess(const StageContext& ctx) const override;

  /// Unscaled |G| after each Newton update of the most recent stage solve.
  const std::vector<double>& newton_residual_history() const { return newton_residuals_; }

  /// Heat content integral(rho c_p(Theta) Theta) evaluated at the current
  /// state; conserved under pure-Neumann zero-flux conditions with frozen
  /// coefficients.
  double thermal_energy() const;

  /// Smallest conductivity over [lo, hi] K on a 1 K grid (role assignment).
  double min_conductivity(double lo_k, double hi_k) const;

  /// Stage residual and Jacobian of the current configuration; exposed for
  /// the finite-difference Jacobian validation.
  Eigen::VectorXd stage_residual(const Eigen::VectorXd& theta, const Eigen::VectorXd& s,
                                 double dt_a, double q_interface, double t_stage) const;
  Eigen::MatrixXd stage_jacobian_dense(const Eigen::VectorXd& theta, const Eigen::VectorXd& s,
                                       double dt_a, double q_interface, double t_stage) const;

  /// Assembled capacity and conductivity matrices at the given state.
  void assemble_matrices(const Eigen::VectorXd& theta, Eigen::MatrixXd& capacity,
                         Eigen::MatrixXd& conductivity) const;

private:
  struct Quadrature {
    std::vector<double> xi, w;
  };

  void assemble_system(const Eigen::VectorXd& theta, const Eigen::VectorXd& s,
                       double dt_a, double q_interface, double t_stage,
                       Eigen::VectorXd& residual, BandedMatrix* jacobian) const;
  void check_physical(const Eigen::VectorXd& theta) const;

  StructureMesh mesh_;
  std::shared_ptr<const Material> material_;
  SdirkTableau tableau_;
  Options opts_;
  Quadrature quad_;

  Eigen::VectorXd state_;                  // accepted nodal temperatures at t_n
  Eigen::VectorXd starting_vector_;
  Eigen::VectorXd current_;                // newest stage solution
  std::vector<Eigen::VectorXd> stage_derivatives_;
  Eigen::VectorXd step_solution_;
  double last_dt_ = 0.0;
  bool stage_open_ = false;

  std::function<double(double, double)> source_;
  std::function<double(double)> far_flux_;
  std::vector<double> newton_residuals_;

  struct Backup {
    Eigen::VectorXd state;
    std::vector<Eigen::VectorXd> stage_derivatives;
    double last_dt = 0.0;
  };
  Backup backup_;
  bool has_backup_ = false;
};

}  // namespace tfsi

#endif
