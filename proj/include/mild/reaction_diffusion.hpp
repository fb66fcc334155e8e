#pragma once

#include "mild/descent.hpp"
#include "mild/spectral_torus.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace mild::rd {

/// Logistic reaction-diffusion control problem on the torus,
///   rho_t = nu rho_thth + beta rho (1 - rho) + u1 cos(th)/sqrt(pi) + u2 sin(th)/sqrt(pi),
/// with cost (1/2)||rho_T - target||^2 + (alpha/2) int |u|^2.
struct RDConfig {
  double nu = 0.1;
  double beta = 0.05;
  double T = 2.0;
  double alpha = 0.2;
  double radius = 20.0;
  double epsilon = 1e-3;
  std::int64_t n_space = 96;
  double dt = 1e-3;
  std::int64_t n_intervals = 30;
  std::int64_t outer_iters = 4;
  std::int64_t seed = 0;
  std::string output_dir = "out";

  /// Throws InvalidArgument naming the violated bound.
  void validate() const;
};

double initial_profile(double theta);
double target_profile(double theta);

struct RDProblem {
  torus::TorusGrid torus;
  std::shared_ptr<const torus::SpectralHeatSemigroup> semigroup;
  StateField target;
  ProblemSpec problem;
  TimeGrid grid;
};

RDProblem build_problem(const RDConfig& cfg);

/// ||x - target|| / ||target|| in the discrete L2 norm.
double relative_mismatch(const RDProblem& setup, const StateField& x);

struct RunResult {
  RDConfig config;
  RDProblem setup;
  DescentConfig descent;
  DescentReport report;
};

/// Descent from u = 0 with the configured number of outer iterations
/// (outer_iters = 0 only evaluates the initial cost).
RunResult reproduce(const RDConfig& cfg, unsigned threads = 0);

}  // namespace mild::rd
