#pragma once

#include "mild/reaction_diffusion.hpp"
#include "mild/variational.hpp"

#include <random>
#include <string>
#include <vector>

namespace mild::verify {

/// One line of the residual table: passes when |value - target| <= tolerance.
struct Row {
  std::string name;
  double value;
  double target;
  double tolerance;
  bool passed() const { return std::abs(value - target) <= tolerance; }
};

/// 2-state, 1-input oracle used by the verify table.
LinearOracle reference_oracle();

/// Self-convergence slope log2(e(dt)/e(dt/2)) of the terminal state against a
/// dt/16 reference, holding the control `u_val` on every interval.
double integrator_order_slope(const rd::RDConfig& cfg, const ControlValue& u_val);

/// Least-squares slope of log|probe - jvp pairing| against log eps.
double probe_gap_slope(const rd::RDConfig& cfg, const std::vector<double>& epsilons);

/// Number of samples (out of instances * samples) that beat pointwise_minimizer on Hbar.
std::size_t minimizer_violations(std::mt19937_64& rng, std::size_t instances,
                                 std::size_t samples);

/// Runs every residual check; `cfg` selects the benchmark discretization.
std::vector<Row> run_all(const rd::RDConfig& cfg, unsigned threads = 0);

}  // namespace mild::verify
