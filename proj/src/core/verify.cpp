#include "mild/verify.hpp"

#include "mild/descent.hpp"

#include <cmath>
#include <numbers>

namespace mild::verify {

LinearOracle reference_oracle() {
  Eigen::MatrixXd a(2, 2);
  a << -0.3, 0.8, -0.6, -0.2;
  Eigen::MatrixXd b(2, 1);
  b << 1.0, 0.5;
  Eigen::VectorXd c(2);
  c << 1.0, -0.7;
  return LinearOracle::linear_cost(a, b, c);
}

double integrator_order_slope(const rd::RDConfig& cfg, const ControlValue& u_val) {
  const rd::RDProblem setup = rd::build_problem(cfg);
  const auto n = static_cast<std::size_t>(cfg.n_intervals);
  const std::size_t spi = setup.grid.steps_per_interval();
  auto terminal = [&](std::size_t steps) {
    const TimeGrid grid(cfg.T, n, steps);
    const ControlSignal u = ControlSignal::constant(grid.control_partition(), u_val);
    return propagate_terminal(setup.problem, grid, u, 0.0, setup.problem.x0);
  };
  const StateField reference = terminal(16 * spi);
  const double coarse = torus::l2_distance_sq(setup.torus, terminal(spi), reference);
  const double fine = torus::l2_distance_sq(setup.torus, terminal(2 * spi), reference);
  return 0.5 * std::log2(coarse / fine);
}

double probe_gap_slope(const rd::RDConfig& cfg, const std::vector<double>& epsilons) {
  const rd::RDProblem setup = rd::build_problem(cfg);
  const ControlSignal ubar = ControlSignal::zero(setup.grid, setup.problem.m());
  const StateField& h = setup.problem.channels.front().h;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double eps : epsilons) {
    const auto [probe, exact] =
        dp_probe_vs_jvp(setup.problem, setup.grid, ubar, 0.0, setup.problem.x0, h, eps);
    const double lx = std::log(eps);
    const double ly = std::log(std::abs(probe - exact));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const auto k = static_cast<double>(epsilons.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

std::size_t minimizer_violations(std::mt19937_64& rng, std::size_t instances,
                                 std::size_t samples) {
  constexpr double alphas[] = {0.0, 0.2, 1.0};
  constexpr double radii[] = {1.0, 20.0};
  std::normal_distribution<double> normal(0.0, 5.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    const double alpha = alphas[i % 3];
    const double radius = radii[(i / 3) % 2];
    ControlValue grad(2);
    grad << normal(rng), normal(rng);
    auto hamiltonian = [&](const ControlValue& u) {
      return 0.5 * alpha * u.squaredNorm() + u.dot(grad);
    };
    const double best = hamiltonian(pointwise_minimizer(alpha, radius, grad));
    for (std::size_t s = 0; s < samples; ++s) {
      const double r = radius * std::sqrt(unit(rng));
      const double phi = 2.0 * std::numbers::pi * unit(rng);
      ControlValue v(2);
      v << r * std::cos(phi), r * std::sin(phi);
      if (hamiltonian(v) < best - 1e-12 * (1.0 + std::abs(best))) ++violations;
    }
  }
  return violations;
}

std::vector<Row> run_all(const rd::RDConfig& cfg, unsigned threads) {
  std::vector<Row> rows;
  std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.seed));

  // Linear oracle: T = 1, dt = 1e-4.
  const LinearOracle oracle = reference_oracle();
  Eigen::VectorXd x0(2);
  x0 << 1.0, 0.0;
  const ProblemSpec lin = oracle.to_problem(x0, 0.5, 10.0, 1.0);
  const TimeGrid lgrid = TimeGrid::with_max_step(1.0, 100, 1e-4);
  std::uniform_real_distribution<double> uni(-0.5, 0.5);
  auto random_control = [&](const TimeGrid& grid) {
    std::vector<ControlValue> vals;
    for (std::size_t k = 0; k < grid.n_intervals(); ++k) {
      ControlValue v(1);
      v << uni(rng);
      vals.push_back(v);
    }
    return ControlSignal(grid.control_partition(), vals);
  };
  const ControlSignal lbar = random_control(lgrid);
  const ControlSignal lu = random_control(lgrid);

  rows.push_back({"linear.backward_invariance",
                  backward_invariance_residual(lin, lgrid, lbar, 1), 0.0, 1e-8});
  {
    const std::size_t node = lgrid.n_steps() * 3 / 10;
    const double s = lgrid.node(node);
    const StateField h = oracle.b.col(0);
    const StateField got = jvp(lin, lgrid, lbar, s, x0, h);
    const StateField want = expm((1.0 - s) * oracle.a) * h;
    rows.push_back({"linear.jvp_vs_expm", (got - want).norm() / want.norm(), 0.0, 1e-8});
    const auto [probe, exact] = dp_probe_vs_jvp(lin, lgrid, lbar, s, x0, h, 1e-3);
    rows.push_back({"linear.dp_probe_vs_jvp", std::abs(probe - exact), 0.0, 1e-8});
  }
  rows.push_back({"linear.increment_identity", increment_identity_residual(lin, lgrid, lbar, lu),
                  0.0, 1e-6});
  {
    const double direct = evaluate_cost(lin, lgrid, lu) - evaluate_cost(lin, lgrid, lbar);
    const double formula = exact_increment(lin, lgrid, lbar, lu, {.threads = threads});
    rows.push_back({"linear.exact_increment_vs_direct",
                    std::abs(formula - direct) / std::max(1.0, std::abs(direct)), 0.0, 1e-4});
  }

  const rd::RDProblem bench = rd::build_problem(cfg);
  const ControlSignal zero = ControlSignal::zero(bench.grid, bench.problem.m());
  rows.push_back({"benchmark.backward_invariance",
                  backward_invariance_residual(bench.problem, bench.grid, zero, 1), 0.0, 1e-4});
  rows.push_back({"benchmark.probe_gap_slope", probe_gap_slope(cfg, {1e-2, 1e-3, 1e-4}), 1.0, 0.2});
  rows.push_back({"benchmark.integrator_order_u0",
                  integrator_order_slope(cfg, ControlValue::Zero(2)), 1.0, 0.15});
  rows.push_back({"minimizer.violations",
                  static_cast<double>(minimizer_violations(rng, 100, 10000)), 0.0, 0.0});
  return rows;
}

}  // namespace mild::verify
