// SPDX-License-Identifier: Apache-2.0
#ifndef TFSI_SIMULATION_HPP
#define TFSI_SIMULATION_HPP

#include <memory>

#include "tfsi/config.hpp"
#include "tfsi/fluid_surrogate.hpp"
#include "tfsi/run_record.hpp"
#include "tfsi/structure_solver.hpp"
#include "tfsi/time_loop.hpp"

namespace tfsi {

struct RunParams {
  double tol = 1e-4;
  Accelerator accelerator = Accelerator::None;
  Predictor predictor = Predictor::None;
  bool adaptive = true;
  double dt0 = 0.5;       // initial (adaptive) or fixed step size
  double end_time = 100.0;
};

struct SimulationResult {
  RunRecord record;
  bool dnf = false;           // did not finish (coupling/dt failure)
  std::string dnf_reason;
  double initial_interface = 0.0;
  double end_time = 0.0;
  Eigen::VectorXd structure_end;
  Eigen::VectorXd fluid_end;
  InterfaceVector interface_end;

  /// Relative l2 distance of the combined end state to a reference result.
  double end_state_error(const SimulationResult& reference) const;

  /// Interface temperature at time t from the accepted-step polyline.
  double interface_at(double t) const;

  /// RMS over uniformly spaced sample times of the relative interface
  /// temperature deviation from a reference trajectory: the accuracy
  /// measure used to match fixed and adaptive runs.
  double trajectory_error(const SimulationResult& reference, int samples = 64) const;
};

/// One fully wired coupled simulation: 51CrV4 (or frozen-coefficient)
/// structure as the Neumann partner, conduction surrogate as the Dirichlet
/// partner. Construction rejects parameter sets whose surrogate
/// conductivity is not strictly below the structure's over [273, 1300] K --
/// the Dirichlet role belongs to the low-conductivity side.
class CoupledSimulation {
public:
  CoupledSimulation(const ModelConfig& model, const RunParams& params);

  SimulationResult run();

  StructureSolver& structure() { return *structure_; }
  FluidSurrogate& fluid() { return *fluid_; }
  const CouplingConfig& coupling() const { return coupling_; }
  const StepController& controller() const { return controller_; }
  const SdirkTableau& tableau() const { return tableau_; }

  /// Residual-norm sequence of the first stage of the first step at a fixed
  /// step size (the single-stage residual-decay study).
  std::vector<double> first_stage_residuals(double dt);

private:
  SdirkTableau tableau_;
  std::unique_ptr<StructureSolver> structure_;
  std::unique_ptr<FluidSurrogate> fluid_;
  CouplingConfig coupling_;
  StepController controller_;
  RunParams params_;
};

std::string method_label(Accelerator a, Predictor p);

}  // namespace tfsi

#endif
