#include "mild/reaction_diffusion.hpp"

#include <cmath>
#include <numbers>

namespace mild::rd {

void RDConfig::validate() const {
  auto positive = [](double v, const char* name) {
    require(std::isfinite(v) && v > 0.0, ErrorKind::InvalidArgument,
            std::string(name) + " must be > 0");
  };
  positive(nu, "nu");
  require(std::isfinite(beta), ErrorKind::InvalidArgument, "beta must be finite");
  positive(T, "T");
  require(std::isfinite(alpha) && alpha >= 0.0, ErrorKind::InvalidArgument,
          "alpha must be >= 0");
  positive(radius, "radius");
  require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon <= 1.0,
          ErrorKind::InvalidArgument, "epsilon must be in (0, 1]");
  require(n_space >= 4 && n_space % 2 == 0, ErrorKind::InvalidArgument,
          "n_space must be even and >= 4");
  positive(dt, "dt");
  require(n_intervals >= 1, ErrorKind::InvalidArgument, "n_intervals must be >= 1");
  require(outer_iters >= 0, ErrorKind::InvalidArgument, "outer_iters must be >= 0");
  require(seed >= 0, ErrorKind::InvalidArgument, "seed must be >= 0");
  require(!output_dir.empty(), ErrorKind::InvalidArgument, "output_dir must be non-empty");
}

double initial_profile(double theta) { return std::exp(1.5 * std::cos(theta - 1.0)); }
double target_profile(double theta) { return std::exp(2.5 * std::cos(theta - 2.2)); }

RDProblem build_problem(const RDConfig& cfg) {
  cfg.validate();
  torus::TorusGrid grid(cfg.n_space);
  auto semigroup = std::make_shared<const torus::SpectralHeatSemigroup>(grid, cfg.nu);
  StateField target = grid.sample(target_profile);
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);

  ProblemSpec p;
  p.state_dim = grid.size();
  p.semigroup = semigroup;
  const double beta = cfg.beta;
  p.drift = [beta](double, const StateField& x) -> StateField {
    return beta * x.array() * (1.0 - x.array());
  };
  p.drift_jvp = [beta](double, const StateField& x, const StateField& h) -> StateField {
    return beta * (1.0 - 2.0 * x.array()) * h.array();
  };
  const StateField cos_mode = grid.sample([&](double th) { return std::cos(th) * inv_sqrt_pi; });
  const StateField sin_mode = grid.sample([&](double th) { return std::sin(th) * inv_sqrt_pi; });
  for (Eigen::Index j = 0; j < 2; ++j) {
    ControlValue e = ControlValue::Unit(2, j);
    p.channels.push_back(
        {[e](double, const StateField&) { return e; }, j == 0 ? cos_mode : sin_mode,
         [](double, const StateField&, const StateField&) { return ControlValue::Zero(2); }});
  }
  p.terminal_cost = {[grid, target](const StateField& x) {
                       return 0.5 * torus::l2_distance_sq(grid, x, target);
                     },
                     [target](const StateField& x) { return StateField(x - target); }};
  p.alpha = cfg.alpha;
  p.radius = cfg.radius;
  p.horizon = cfg.T;
  p.x0 = grid.sample(initial_profile);
  p.inner_weight = grid.weight();
  p.divergence_bound = 1e6;
  p.validate();

  TimeGrid tgrid =
      TimeGrid::with_max_step(cfg.T, static_cast<std::size_t>(cfg.n_intervals), cfg.dt);
  return {grid, std::move(semigroup), std::move(target), std::move(p), std::move(tgrid)};
}

double relative_mismatch(const RDProblem& setup, const StateField& x) {
  return std::sqrt(torus::l2_distance_sq(setup.torus, x, setup.target) /
                   torus::l2_distance_sq(setup.torus, setup.target,
                                         StateField::Zero(setup.target.size())));
}

RunResult reproduce(const RDConfig& cfg, unsigned threads) {
  RDProblem setup = build_problem(cfg);
  DescentConfig dc;
  dc.n_intervals = static_cast<std::size_t>(cfg.n_intervals);
  dc.epsilon = cfg.epsilon;
  dc.max_iters = static_cast<std::size_t>(std::max<std::int64_t>(cfg.outer_iters, 1));
  dc.threads = threads;
  const ControlSignal u0 = ControlSignal::zero(setup.grid, setup.problem.m());

  DescentReport report;
  if (cfg.outer_iters == 0) {
    StateField terminal = propagate_terminal(setup.problem, setup.grid, u0, 0.0, setup.problem.x0);
    report.cost_history.push_back(cost_from_terminal(setup.problem, u0, terminal));
    report.controls.push_back(u0);
    report.terminal_states.push_back(std::move(terminal));
  } else {
    report = run_descent(setup.problem, setup.grid, dc, u0);
  }
  return {cfg, std::move(setup), dc, std::move(report)};
}

}  // namespace mild::rd
