#include "mild/evolution.hpp"

#include <algorithm>
#include <string>

namespace mild {

namespace {

void check_inputs(const ProblemSpec& problem, const TimeGrid& grid, const ControlSignal& u,
                  const StateField& xs) {
  require_dim(xs.size(), problem.state_dim, "initial state");
  require_dim(u.channels(), problem.m(), "control signal");
  u.check_aligned(grid);
  require(u.max_norm() <= problem.radius * (1.0 + 1e-12), ErrorKind::InvalidArgument,
          "control leaves the admissible ball B_R");
}

void check_divergence(const ProblemSpec& problem, const StateField& x, double t) {
  if (!x.allFinite() || x.cwiseAbs().maxCoeff() > problem.divergence_bound) {
    throw Error(ErrorKind::Divergence,
                "state diverged (max |x| above " + std::to_string(problem.divergence_bound) +
                    ") at t = " + std::to_string(t));
  }
}

}  // namespace

ExpEulerStepper::ExpEulerStepper(const ProblemSpec& problem, const TimeGrid& grid)
    : problem_(&problem), grid_(&grid), step_(problem.semigroup->at(grid.dt())) {}

StateField ExpEulerStepper::forcing(double t, const StateField& x, const ControlValue& u) const {
  StateField f = problem_->drift(t, x);
  f.noalias() += problem_->control_action(t, x, u);
  return f;
}

StateField ExpEulerStepper::step(std::size_t node, const StateField& x,
                                 const ControlValue& u) const {
  const double t = grid_->node(node);
  StateField y = x;
  y.noalias() += grid_->dt() * forcing(t, x, u);
  return step_->apply(y);
}

Trajectory propagate(const ProblemSpec& problem, const TimeGrid& grid, const ControlSignal& u,
                     double s, const StateField& xs) {
  check_inputs(problem, grid, u, xs);
  const std::size_t first = grid.node_index(s);
  const ExpEulerStepper stepper(problem, grid);
  Trajectory traj;
  const std::size_t count = grid.n_steps() - first + 1;
  traj.times.reserve(count);
  traj.states.reserve(count);
  traj.times.push_back(grid.node(first));
  traj.states.push_back(xs);
  for (std::size_t i = first; i < grid.n_steps(); ++i) {
    StateField next = stepper.step(i, traj.states.back(), u(grid.node(i)));
    check_divergence(problem, next, grid.node(i + 1));
    traj.times.push_back(grid.node(i + 1));
    traj.states.push_back(std::move(next));
  }
  return traj;
}

StateField propagate_between(const ProblemSpec& problem, const TimeGrid& grid,
                             const ControlSignal& u, double s, double t, const StateField& xs) {
  check_inputs(problem, grid, u, xs);
  const std::size_t first = grid.node_index(s);
  const std::size_t last = grid.node_index(t);
  require(first <= last, ErrorKind::InvalidArgument, "propagation end precedes start");
  const ExpEulerStepper stepper(problem, grid);
  StateField x = xs;
  for (std::size_t i = first; i < last; ++i) {
    x = stepper.step(i, x, u(grid.node(i)));
    check_divergence(problem, x, grid.node(i + 1));
  }
  return x;
}

StateField propagate_terminal(const ProblemSpec& problem, const TimeGrid& grid,
                              const ControlSignal& u, double s, const StateField& xs) {
  return propagate_between(problem, grid, u, s, grid.horizon(), xs);
}

StateField advance_constant(const ExpEulerStepper& stepper, std::size_t first, std::size_t last,
                            StateField x, const ControlValue& u_val) {
  const TimeGrid& grid = stepper.grid();
  for (std::size_t i = first; i < last; ++i) {
    x = stepper.step(i, x, u_val);
    check_divergence(stepper.problem(), x, grid.node(i + 1));
  }
  return x;
}

ControlSignal concat_control(const ControlSignal& u, const ControlSignal& ubar, double s) {
  require(u.horizon() == ubar.horizon(), ErrorKind::InvalidArgument,
          "concatenated controls must share the horizon");
  require_dim(ubar.channels(), u.channels(), "concatenated control");
  require(s >= 0.0 && s <= u.horizon(), ErrorKind::InvalidArgument,
          "switch time outside [0,T]");
  std::vector<double> bps = merge_partitions(u.breakpoints(), ubar.breakpoints());
  if (!std::binary_search(bps.begin(), bps.end(), s)) {
    bps.insert(std::upper_bound(bps.begin(), bps.end(), s), s);
  }
  std::vector<ControlValue> values;
  values.reserve(bps.size() - 1);
  for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
    values.push_back(bps[k] < s ? u(bps[k]) : ubar(bps[k]));
  }
  return ControlSignal(std::move(bps), std::move(values));
}

double cost_from_terminal(const ProblemSpec& problem, const ControlSignal& u,
                          const StateField& terminal) {
  return problem.terminal_cost.value(terminal) + 0.5 * problem.alpha * u.energy();
}

double evaluate_cost(const ProblemSpec& problem, const TimeGrid& grid, const ControlSignal& u) {
  return cost_from_terminal(problem, u, propagate_terminal(problem, grid, u, 0.0, problem.x0));
}

}  // namespace mild
