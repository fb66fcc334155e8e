#pragma once

#include "mild/evolution.hpp"

namespace mild {

/// Forward-difference probes of the backward cost p_t = l o Phibar_{t,T},
/// where Phibar is the flow under the baseline control.
class BackwardProbe {
 public:
  BackwardProbe(const ProblemSpec& problem, const TimeGrid& grid, ControlSignal baseline,
                double epsilon, unsigned threads = 0);

  const ProblemSpec& problem() const noexcept { return *problem_; }
  const TimeGrid& grid() const noexcept { return *grid_; }
  const ControlSignal& baseline() const noexcept { return baseline_; }
  double epsilon() const noexcept { return epsilon_; }
  unsigned threads() const noexcept { return threads_; }

  /// p_t(x) = l(Phibar_{t,T}(x)).
  double backward_cost(double t, const StateField& x) const;

 private:
  const ProblemSpec* problem_;
  const TimeGrid* grid_;
  ControlSignal baseline_;
  double epsilon_;
  unsigned threads_;
};

/// xi_j = (p_t(x + eps h^j) - p_t(x)) / eps for every channel; m+1 flows.
Eigen::VectorXd probe_xi(const BackwardProbe& probe, double t, const StateField& x);

/// Central-difference variant (2m flows). Diagnostic only; the descent never uses it.
Eigen::VectorXd probe_xi_central(const BackwardProbe& probe, double t, const StateField& x);

/// sum_j xi_j g^j_t(x), the probe approximation of G_t(x)' Dp_t(x).
ControlValue channel_gradient(const BackwardProbe& probe, double t, const StateField& x);

struct HamiltonianEval {
  double value;
  ControlValue gradient_channel;
};

/// Hbar = (alpha/2)|u|^2 + u^T grad_channel.
HamiltonianEval reduced_hamiltonian(const ProblemSpec& problem, const ControlValue& grad_channel,
                                    const ControlValue& u_val);

struct IncrementOptions {
  double epsilon = 1e-3;
  unsigned threads = 0;
};

/// Quadrature of t -> Hbar_t(x_t, u(t)) - Hbar_t(x_t, ubar(t)) along x = x^u.
///
/// Composite midpoint rule over the pieces of the merged partition of u and
/// ubar. A piece [t_a, t_b) owns the step-start nodes a..b-1; the integrand is
/// sampled at their centre (a+b-1)/2, averaging the two neighbouring nodes
/// when that centre falls between nodes. Pieces where u == ubar contribute 0
/// and are never probed.
double exact_increment(const ProblemSpec& problem, const TimeGrid& grid,
                       const ControlSignal& ubar, const ControlSignal& u,
                       const IncrementOptions& options = {});

}  // namespace mild
