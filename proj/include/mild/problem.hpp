#pragma once

#include "mild/types.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <vector>

namespace mild {

/// Bounded linear operator S_tau for one fixed tau.
class LinearPropagator {
 public:
  virtual ~LinearPropagator() = default;
  virtual StateField apply(const StateField& x) const = 0;
};

/// Action of the C0 semigroup S_tau generated by A. Implementations must
/// return the identity at tau = 0.
class SemigroupAction {
 public:
  virtual ~SemigroupAction() = default;
  virtual Eigen::Index dim() const = 0;

  /// Precomputed S_tau; reusable for repeated steps of the same size.
  virtual std::shared_ptr<const LinearPropagator> at(double tau) const = 0;

  StateField apply(double tau, const StateField& x) const { return at(tau)->apply(x); }
};

using DriftFn = std::function<StateField(double t, const StateField& x)>;
/// Directional derivative Df_t(x)[h].
using DriftJvpFn = std::function<StateField(double t, const StateField& x, const StateField& h)>;
using ChannelFn = std::function<ControlValue(double t, const StateField& x)>;
/// Directional derivative Dg_t(x)[h].
using ChannelJvpFn = std::function<ControlValue(double t, const StateField& x, const StateField& h)>;

/// One actuator: G_t(x)u gains the term (u^T g_t(x)) h.
struct Channel {
  ChannelFn g;
  StateField h;
  ChannelJvpFn g_jvp;  // optional, used only by the variational checks
};

struct TerminalCost {
  std::function<double(const StateField&)> value;
  /// Riesz representative of Dl(x) under the problem's inner product.
  std::function<StateField(const StateField&)> gradient;
};

/// Semilinear problem x' = A x + f_t(x) + G_t(x) u with terminal cost
/// l(x_T) + (alpha/2) int |u|^2 and controls in the ball B_R of R^m.
struct ProblemSpec {
  Eigen::Index state_dim = 0;
  std::shared_ptr<const SemigroupAction> semigroup;
  DriftFn drift;
  std::vector<Channel> channels;
  TerminalCost terminal_cost;
  double alpha = 0.0;
  double radius = 1.0;
  double horizon = 1.0;
  StateField x0;

  /// Uniform weight of the discrete inner product <a,b> = w * sum a_i b_i.
  double inner_weight = 1.0;
  /// Propagation aborts once max|x_i| exceeds this bound.
  double divergence_bound = std::numeric_limits<double>::infinity();

  DriftJvpFn drift_jvp;  // optional

  Eigen::Index m() const noexcept { return static_cast<Eigen::Index>(channels.size()); }

  /// Throws on any violated structural invariant.
  void validate() const;

  /// G_t(x) u = sum_j (u^T g^j_t(x)) h^j.
  StateField control_action(double t, const StateField& x, const ControlValue& u) const;

  /// G_t(x)' d = sum_j d_j g^j_t(x), for d_j = <p, h^j>-type channel pairings.
  ControlValue channel_combination(double t, const StateField& x, const Eigen::VectorXd& d) const;

  double inner(const StateField& a, const StateField& b) const { return inner_weight * a.dot(b); }
};

}  // namespace mild
