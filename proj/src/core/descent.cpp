#include "mild/descent.hpp"

#include <cmath>

namespace mild {

ControlValue project_ball(double radius, const ControlValue& v) {
  require(radius > 0.0, ErrorKind::InvalidArgument, "radius must be > 0");
  const double norm = v.norm();
  if (norm <= radius) return v;
  return (radius / norm) * v;
}

ControlValue pointwise_minimizer(double alpha, double radius, const ControlValue& grad,
                                 const ControlValue& fallback) {
  require(radius > 0.0, ErrorKind::InvalidArgument, "radius must be > 0");
  require(alpha >= 0.0, ErrorKind::InvalidArgument, "alpha must be >= 0");
  if (alpha > 0.0) return project_ball(radius, -grad / alpha);
  const double norm = grad.norm();
  if (norm == 0.0) return fallback;
  return (-radius / norm) * grad;
}

ControlValue pointwise_minimizer(double alpha, double radius, const ControlValue& grad) {
  return pointwise_minimizer(alpha, radius, grad, ControlValue::Zero(grad.size()));
}

void DescentConfig::validate() const {
  require(n_intervals >= 1, ErrorKind::InvalidArgument, "n_intervals must be >= 1");
  require(std::isfinite(epsilon) && epsilon > 0.0, ErrorKind::InvalidArgument,
          "epsilon must be > 0");
  require(max_iters >= 1, ErrorKind::InvalidArgument, "max_iters must be >= 1");
  require(stall_tol >= 0.0, ErrorKind::InvalidArgument, "stall_tol must be >= 0");
}

UpdateResult sample_and_hold_update(const ProblemSpec& problem, const TimeGrid& grid,
                                    const DescentConfig& cfg, const ControlSignal& ubar) {
  cfg.validate();
  require(cfg.n_intervals == grid.n_intervals(), ErrorKind::Misaligned,
          "descent partition does not match the grid's control partition");
  const BackwardProbe probe(problem, grid, ubar, cfg.epsilon, cfg.threads);
  const ExpEulerStepper stepper(problem, grid);
  const auto& partition = grid.control_partition();

  std::vector<ControlValue> values;
  values.reserve(grid.n_intervals());
  StateField x = problem.x0;
  for (std::size_t k = 0; k < grid.n_intervals(); ++k) {
    const double tk = partition[k];
    const ControlValue grad = channel_gradient(probe, tk, x);
    values.push_back(pointwise_minimizer(problem.alpha, problem.radius, grad, ubar(tk)));
    x = advance_constant(stepper, grid.breakpoint_node(k), grid.breakpoint_node(k + 1),
                         std::move(x), values.back());
  }
  return {ControlSignal(partition, std::move(values)), std::move(x)};
}

DescentReport run_descent(const ProblemSpec& problem, const TimeGrid& grid,
                          const DescentConfig& cfg, const ControlSignal& u0) {
  cfg.validate();
  DescentReport report;
  {
    StateField terminal;
    try {
      terminal = propagate_terminal(problem, grid, u0, 0.0, problem.x0);
    } catch (const Error& e) {
      throw DescentAborted(e, std::move(report));
    }
    report.cost_history.push_back(cost_from_terminal(problem, u0, terminal));
    report.controls.push_back(u0);
    report.terminal_states.push_back(std::move(terminal));
  }

  for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
    const ControlSignal& ubar = report.controls.back();
    const double previous = report.cost_history.back();
    std::optional<UpdateResult> next;
    try {
      next = sample_and_hold_update(problem, grid, cfg, ubar);
    } catch (const Error& e) {
      throw DescentAborted(e, std::move(report));
    }
    const double cost = cost_from_terminal(problem, next->control, next->terminal);
    if (cost > previous) {
      ++report.rejections;
      report.rejected_cost = cost;
      report.stop_reason = StopReason::MonotonicityGuard;
      break;
    }
    if (cfg.track_increment_residuals) {
      double estimate = 0.0;
      try {
        estimate = exact_increment(problem, grid, ubar, next->control,
                                   {.epsilon = cfg.epsilon, .threads = cfg.threads});
      } catch (const Error& e) {
        throw DescentAborted(e, std::move(report));
      }
      report.increment_estimates.push_back(estimate);
      report.increment_residuals.push_back(std::abs(estimate - (cost - previous)));
    }
    report.cost_history.push_back(cost);
    report.controls.push_back(std::move(next->control));
    report.terminal_states.push_back(std::move(next->terminal));
    if (previous - cost < cfg.stall_tol) {
      report.stop_reason = StopReason::Stalled;
      break;
    }
  }
  return report;
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::MaxIterations:
      return "max_iterations";
    case StopReason::Stalled:
      return "stalled";
    case StopReason::MonotonicityGuard:
      return "monotonicity_guard";
  }
  return "unknown";
}

}  // namespace mild
