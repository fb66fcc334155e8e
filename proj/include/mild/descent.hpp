#pragma once

#include "mild/increment.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mild {

/// Euclidean projection onto the closed ball of the given radius.
ControlValue project_ball(double radius, const ControlValue& v);

/// Minimizer of u -> (alpha/2)|u|^2 + u^T grad over B_R.
///   alpha > 0:              project(-grad/alpha)
///   alpha = 0, grad != 0:   -R grad/|grad|
///   alpha = 0, grad == 0:   every point minimizes; returns `fallback`.
ControlValue pointwise_minimizer(double alpha, double radius, const ControlValue& grad,
                                 const ControlValue& fallback);
ControlValue pointwise_minimizer(double alpha, double radius, const ControlValue& grad);

struct DescentConfig {
  std::size_t n_intervals = 30;
  double epsilon = 1e-3;
  std::size_t max_iters = 4;
  double stall_tol = 0.0;
  unsigned threads = 0;
  /// Evaluate exact_increment after every accepted iterate and record
  /// |increment - direct cost difference|.
  bool track_increment_residuals = true;

  void validate() const;
};

enum class StopReason { MaxIterations, Stalled, MonotonicityGuard };

struct DescentReport {
  /// Entry 0 is the cost of the supplied initial control.
  std::vector<double> cost_history;
  std::vector<ControlSignal> controls;
  std::vector<StateField> terminal_states;
  /// One entry per accepted iterate (empty when tracking is off).
  std::vector<double> increment_residuals;
  std::vector<double> increment_estimates;
  std::size_t rejections = 0;
  std::optional<double> rejected_cost;
  StopReason stop_reason = StopReason::MaxIterations;

  std::size_t iterations() const noexcept { return cost_history.empty() ? 0 : cost_history.size() - 1; }
};

/// Thrown when propagation fails mid-descent; carries everything recorded so far.
class DescentAborted : public Error {
 public:
  DescentAborted(const Error& cause, DescentReport partial)
      : Error(cause.kind(), std::string("descent aborted: ") + cause.what()),
        partial_(std::move(partial)) {}
  const DescentReport& partial() const noexcept { return partial_; }

 private:
  DescentReport partial_;
};

struct UpdateResult {
  ControlSignal control;
  StateField terminal;
};

/// One pass of the sample-and-hold update against baseline `ubar`: for each
/// control interval, freeze x^k at t_k, probe the backward cost under ubar,
/// hold the Hamiltonian minimizer on [t_k, t_{k+1}) and integrate to x^{k+1}.
UpdateResult sample_and_hold_update(const ProblemSpec& problem, const TimeGrid& grid,
                                    const DescentConfig& cfg, const ControlSignal& ubar);

/// Iterates sample_and_hold_update. An iterate that raises the cost is
/// rejected and ends the run.
DescentReport run_descent(const ProblemSpec& problem, const TimeGrid& grid,
                          const DescentConfig& cfg, const ControlSignal& u0);

const char* to_string(StopReason reason);

}  // namespace mild
