#pragma once

#include "mild/problem.hpp"

#include <functional>
#include <memory>

namespace mild::torus {

/// Uniform grid theta_i = 2*pi*i/n on the one-dimensional torus.
class TorusGrid {
 public:
  explicit TorusGrid(Eigen::Index n);

  Eigen::Index size() const noexcept { return n_; }
  double weight() const noexcept { return weight_; }
  double theta(Eigen::Index i) const;
  Eigen::VectorXd nodes() const;
  StateField sample(const std::function<double(double)>& fn) const;

 private:
  Eigen::Index n_;
  double weight_;
};

class FftPlans;

/// Heat semigroup exp(tau * nu * d^2/dtheta^2) realized by Fourier multipliers
/// exp(-nu k^2 tau) on the real-to-complex coefficient layout.
class SpectralHeatSemigroup final : public SemigroupAction {
 public:
  SpectralHeatSemigroup(const TorusGrid& grid, double nu);
  ~SpectralHeatSemigroup() override;

  Eigen::Index dim() const override { return grid_.size(); }
  std::shared_ptr<const LinearPropagator> at(double tau) const override;

  double nu() const noexcept { return nu_; }
  const TorusGrid& grid() const noexcept { return grid_; }

  /// Multipliers for wavenumbers k = 0..n/2.
  Eigen::VectorXd multipliers(double tau) const;

 private:
  TorusGrid grid_;
  double nu_;
  std::shared_ptr<const FftPlans> plans_;
};

StateField heat_apply(const SpectralHeatSemigroup& sg, double tau, const StateField& x);

/// One exponential Euler step S_dt x + dt S_dt (f_t(x) + G_t(x) u).
StateField exp_euler_step(const ProblemSpec& problem, const SpectralHeatSemigroup& sg, double dt,
                          double t, const StateField& x, const ControlValue& u);

/// sum_i (x_i - y_i)^2 * 2*pi/n, no factor 1/2.
double l2_distance_sq(const TorusGrid& grid, const StateField& x, const StateField& y);

}  // namespace mild::torus
