// SPDX-License-Identifier: Apache-2.0
#include "tfsi/time_loop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tfsi {

namespace {

InterfaceVector stage_initial_guess(const NeumannSubsolver& structure, const StageContext& ctx,
                                    const CouplingConfig& coupling, const TimeHistory& history) {
  if (coupling.predictor == Predictor::None) return structure.interface_guess(ctx);
  if (ctx.stage_index == 1) {
    return coupling.predictor == Predictor::Linear
               ? predict_stage1_linear(history, ctx.c1)
               : predict_stage1_quadratic(history, ctx.c1);
  }
  return coupling.predictor == Predictor::Linear ? predict_stage2_linear(history, ctx.c1)
                                                 : predict_stage2_quadratic(history, ctx.c1);
}

StageContext make_context(const SdirkTableau& tableau, int stage, double t_n, double dt,
                          double dt_prev) {
  StageContext ctx;
  ctx.stage_index = stage;
  ctx.t_n = t_n;
  ctx.t_stage = t_n + tableau.c[stage - 1] * dt;
  ctx.dt = dt;
  ctx.dt_prev = dt_prev;
  ctx.a_diag = tableau.alpha;
  ctx.c1 = tableau.c[0];
  return ctx;
}

}  // namespace

StepOutcome sdirk2_step(DirichletSubsolver& fluid, NeumannSubsolver& structure,
                        const SdirkTableau& tableau, double t_n, double dt, double dt_prev,
                        const CouplingConfig& coupling, const StepController& controller,
                        TimeHistory& history, bool adaptive) {
  if (dt <= 0.0) throw ConfigError("sdirk2_step: dt must be positive");
  fluid.save_state();
  structure.save_state();

  StepOutcome out;
  out.record.t_n = t_n;
  out.record.dt = dt;

  TimeHistory attempt = history;
  attempt.dt_n = dt;

  // Coupling nonconvergence and inner-solver failures both reject the step;
  // the retry runs at half the step size.
  auto reject_step = [&]() {
    fluid.restore_state();
    structure.restore_state();
    out.accepted = false;
    out.error_estimate = std::numeric_limits<double>::infinity();
    out.dt_next = std::max(0.5 * dt, controller.dt_min);
    out.record.accepted = false;
    out.record.error_estimate = out.error_estimate;
    return out;
  };

  try {
    for (int stage = 1; stage <= 2; ++stage) {
      const StageContext ctx = make_context(tableau, stage, t_n, dt, dt_prev);
      fluid.begin_stage(ctx);
      structure.begin_stage(ctx);
      const InterfaceVector guess = stage_initial_guess(structure, ctx, coupling, attempt);

      StageSolveResult stage_result;
      try {
        stage_result = gauss_seidel_stage_solve(fluid, structure, ctx, guess, coupling);
      } catch (const NonconvergenceError& e) {
        out.record.stages.push_back(
            StageRecord{stage, e.iterations, {}});
        throw;
      }

      fluid.end_stage(ctx);
      structure.end_stage(ctx);
      out.record.stages.push_back(
          StageRecord{stage, stage_result.iterations, stage_result.residual_norms});
      if (stage == 1) attempt.theta_stage1 = stage_result.temperatures;
      if (stage == 2) {
        out.interface_end = stage_result.temperatures;
        out.record.interface_value = stage_result.temperatures[0];
      }
    }
  } catch (const NonconvergenceError&) {
    return reject_step();
  } catch (const SolverFailure&) {
    return reject_step();
  }

  const double est =
      aggregate_error(fluid.local_error_estimate(), structure.local_error_estimate());
  out.error_estimate = est;
  out.record.error_estimate = est;
  out.accepted = !adaptive || est <= controller.tol;
  out.record.accepted = out.accepted;
  out.dt_next = adaptive ? next_step_size(est, dt, controller) : dt;

  if (out.accepted) {
    fluid.end_step();
    structure.end_step();
    attempt.theta_prev = history.theta_n;
    attempt.theta_half_prev = attempt.theta_stage1;
    attempt.theta_n = out.interface_end;
    attempt.dt_prev = dt;
    attempt.theta_stage1.reset();
    attempt.dt_n = 0.0;
    history = std::move(attempt);
  } else {
    fluid.restore_state();
    structure.restore_state();
  }
  return out;
}

TimeLoopResult run_time_loop(DirichletSubsolver& fluid, NeumannSubsolver& structure,
                             const SdirkTableau& tableau, const TimeLoopConfig& loop,
                             const CouplingConfig& coupling, const StepController& controller,
                             const InterfaceVector& interface_initial) {
  coupling.validate();
  controller.validate();
  if (loop.t_end <= 0.0) throw ConfigError("run_time_loop: t_end must be positive");
  if (loop.dt0 <= 0.0) throw ConfigError("run_time_loop: dt0 must be positive");

  TimeHistory history;
  history.theta_n = interface_initial;

  TimeLoopResult result;
  result.interface_end = interface_initial;

  double t = 0.0;
  double dt = std::min(loop.dt0, loop.t_end);
  const double t_eps = 1e-12 * loop.t_end;

  while (t < loop.t_end - t_eps) {
    if (static_cast<long>(result.record.steps.size()) >= loop.max_steps)
      throw SolverFailure("run_time_loop: step budget exhausted");
    dt = std::min(dt, loop.t_end - t);

    const StepOutcome out = sdirk2_step(fluid, structure, tableau, t, dt, history.dt_prev,
                                        coupling, controller, history, loop.adaptive);
    result.record.steps.push_back(out.record);

    if (out.accepted) {
      t += dt;
      dt = out.dt_next;
      result.interface_end = out.interface_end;
    } else {
      if (!loop.adaptive)
        throw SolverFailure("run_time_loop: fixed-step run failed at t = " + std::to_string(t));
      if (dt <= controller.dt_min * (1.0 + 1e-12))
        throw SolverFailure("run_time_loop: dt underflow at t = " + std::to_string(t));
      dt = std::max(out.dt_next, controller.dt_min);
    }
  }

  result.t_reached = t;
  result.record.finished = true;
  return result;
}

}  // namespace tfsi
