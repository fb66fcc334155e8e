#pragma once

#include "mild/control_signal.hpp"
#include "mild/problem.hpp"
#include "mild/time_grid.hpp"

#include <memory>
#include <vector>

namespace mild {

/// Discrete mild solution on the fine nodes of [s,T].
struct Trajectory {
  std::vector<double> times;
  std::vector<StateField> states;
};

/// First-order exponential Euler step
///   x_{i+1} = S_dt x_i + dt S_dt F(t_i, x_i, u_i),
/// with F = f + G u frozen at the left node. The forcing is carried through
/// the full-step semigroup rather than phi_1(dt A).
class ExpEulerStepper {
 public:
  ExpEulerStepper(const ProblemSpec& problem, const TimeGrid& grid);

  StateField forcing(double t, const StateField& x, const ControlValue& u) const;
  /// Advances from fine node `node` to `node + 1`.
  StateField step(std::size_t node, const StateField& x, const ControlValue& u) const;

  const ProblemSpec& problem() const noexcept { return *problem_; }
  const TimeGrid& grid() const noexcept { return *grid_; }
  const LinearPropagator& semigroup_step() const noexcept { return *step_; }

  /// Short identifier stored in run metadata.
  static constexpr const char* variant = "exponential-euler(S_dt applied to x + dt*F)";

 private:
  const ProblemSpec* problem_;
  const TimeGrid* grid_;
  std::shared_ptr<const LinearPropagator> step_;
};

/// x_t = Phi^u_{s,t}(xs) at every fine node of [s,T]. states[0] is xs itself.
Trajectory propagate(const ProblemSpec& problem, const TimeGrid& grid, const ControlSignal& u,
                     double s, const StateField& xs);

/// Phi^u_{s,t}(xs) without storing intermediate states. Bitwise identical to
/// the corresponding entry of propagate().
StateField propagate_between(const ProblemSpec& problem, const TimeGrid& grid,
                             const ControlSignal& u, double s, double t, const StateField& xs);

StateField propagate_terminal(const ProblemSpec& problem, const TimeGrid& grid,
                              const ControlSignal& u, double s, const StateField& xs);

/// Holds u_val fixed while stepping from fine node `first` to `last`.
StateField advance_constant(const ExpEulerStepper& stepper, std::size_t first, std::size_t last,
                            StateField x, const ControlValue& u_val);

/// u on [0,s), ubar on [s,T].
ControlSignal concat_control(const ControlSignal& u, const ControlSignal& ubar, double s);

/// l(x_T^u) + (alpha/2) sum_k |u_k|^2 (t_{k+1} - t_k).
double evaluate_cost(const ProblemSpec& problem, const TimeGrid& grid, const ControlSignal& u);

/// Cost given an already computed terminal state.
double cost_from_terminal(const ProblemSpec& problem, const ControlSignal& u,
                          const StateField& terminal);

}  // namespace mild
