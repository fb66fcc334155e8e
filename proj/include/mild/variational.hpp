#pragma once

#include "mild/increment.hpp"

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

namespace mild {

/// Matrix exponential by scaling and squaring with a degree-13 Pade approximant.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

/// S_tau = exp(tau A) for a small dense generator A.
class MatrixSemigroup final : public SemigroupAction {
 public:
  explicit MatrixSemigroup(Eigen::MatrixXd generator);
  Eigen::Index dim() const override { return generator_.rows(); }
  std::shared_ptr<const LinearPropagator> at(double tau) const override;
  const Eigen::MatrixXd& generator() const noexcept { return generator_; }

 private:
  Eigen::MatrixXd generator_;
};

/// Finite-dimensional test problem x' = A x + B u with closed-form flows.
/// Terminal cost is c^T x when `c` is set, otherwise (1/2)(x - target)^T Q (x - target).
struct LinearOracle {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
  std::optional<Eigen::VectorXd> c;
  Eigen::MatrixXd q;
  Eigen::VectorXd target;

  static LinearOracle linear_cost(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::VectorXd c);
  static LinearOracle quadratic_cost(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd q,
                                     Eigen::VectorXd target);

  ProblemSpec to_problem(const Eigen::VectorXd& x0, double alpha, double radius,
                         double horizon) const;
};

struct TangentFlow {
  StateField terminal;
  std::vector<StateField> tangents;
};

/// Runs the baseline flow from (s, x) together with the discrete variational
/// equation for every direction, using the same exponential Euler stepper:
///   d_{i+1} = S_dt (d_i + dt (Df(x_i)[d_i] + sum_j (ubar_i^T Dg^j(x_i)[d_i]) h^j)).
/// Requires problem.drift_jvp and every channel's g_jvp.
TangentFlow tangent_flow(const ProblemSpec& problem, const TimeGrid& grid,
                         const ControlSignal& ubar, double s, const StateField& x,
                         const std::vector<StateField>& directions);

/// J_{s,T}(x) h along the baseline flow.
StateField jvp(const ProblemSpec& problem, const TimeGrid& grid, const ControlSignal& ubar,
               double s, const StateField& x, const StateField& h);

/// (forward difference of l o Phibar_{t,T} along h, <grad l(Phibar_{t,T}(x)), J h>).
std::pair<double, double> dp_probe_vs_jvp(const ProblemSpec& problem, const TimeGrid& grid,
                                          const ControlSignal& ubar, double t,
                                          const StateField& x, const StateField& h,
                                          double epsilon);

/// |int (u - ubar)^T G_t(x_t)' Dp_t(x_t) dt - (l(x_T) - l(xbar_T))| with Dp
/// from tangent flows (no probes) and the same midpoint sampling as
/// exact_increment.
double increment_identity_residual(const ProblemSpec& problem, const TimeGrid& grid,
                                   const ControlSignal& ubar, const ControlSignal& u);

/// max over fine nodes (every `stride`-th, plus T) of |p_t(xbar_t) - l(xbar_T)|.
double backward_invariance_residual(const ProblemSpec& problem, const TimeGrid& grid,
                                    const ControlSignal& ubar, std::size_t stride = 1);

}  // namespace mild
