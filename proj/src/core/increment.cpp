#include "mild/increment.hpp"

#include "mild/parallel.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace mild {

unsigned threads_from_env() {
  if (const char* env = std::getenv("MILD_DESCENT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<unsigned>(v);
    throw Error(ErrorKind::InvalidArgument,
                std::string("MILD_DESCENT_THREADS must be a nonnegative integer, got '") + env +
                    "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

BackwardProbe::BackwardProbe(const ProblemSpec& problem, const TimeGrid& grid,
                             ControlSignal baseline, double epsilon, unsigned threads)
    : problem_(&problem),
      grid_(&grid),
      baseline_(std::move(baseline)),
      epsilon_(epsilon),
      threads_(threads) {
  require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon <= 1.0,
          ErrorKind::InvalidArgument, "epsilon must lie in (0, 1]");
  baseline_.check_aligned(grid);
  require_dim(baseline_.channels(), problem.m(), "baseline control");
}

double BackwardProbe::backward_cost(double t, const StateField& x) const {
  return problem_->terminal_cost.value(propagate_terminal(*problem_, *grid_, baseline_, t, x));
}

Eigen::VectorXd probe_xi(const BackwardProbe& probe, double t, const StateField& x) {
  const ProblemSpec& problem = probe.problem();
  const auto m = static_cast<std::size_t>(problem.m());
  const double eps = probe.epsilon();
  const auto costs = parallel_map(m + 1, probe.threads(), [&](std::size_t i) {
    if (i == 0) return probe.backward_cost(t, x);
    StateField shifted = x;
    shifted.noalias() += eps * problem.channels[i - 1].h;
    return probe.backward_cost(t, shifted);
  });
  Eigen::VectorXd xi(problem.m());
  for (std::size_t j = 0; j < m; ++j) {
    xi[static_cast<Eigen::Index>(j)] = (costs[j + 1] - costs[0]) / eps;
  }
  return xi;
}

Eigen::VectorXd probe_xi_central(const BackwardProbe& probe, double t, const StateField& x) {
  const ProblemSpec& problem = probe.problem();
  const auto m = static_cast<std::size_t>(problem.m());
  const double eps = probe.epsilon();
  const auto costs = parallel_map(2 * m, probe.threads(), [&](std::size_t i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    StateField shifted = x;
    shifted.noalias() += sign * eps * problem.channels[i / 2].h;
    return probe.backward_cost(t, shifted);
  });
  Eigen::VectorXd xi(problem.m());
  for (std::size_t j = 0; j < m; ++j) {
    xi[static_cast<Eigen::Index>(j)] = (costs[2 * j] - costs[2 * j + 1]) / (2.0 * eps);
  }
  return xi;
}

ControlValue channel_gradient(const BackwardProbe& probe, double t, const StateField& x) {
  return probe.problem().channel_combination(t, x, probe_xi(probe, t, x));
}

HamiltonianEval reduced_hamiltonian(const ProblemSpec& problem, const ControlValue& grad_channel,
                                    const ControlValue& u_val) {
  require_dim(grad_channel.size(), problem.m(), "channel gradient");
  require_dim(u_val.size(), problem.m(), "control value");
  require(u_val.norm() <= problem.radius * (1.0 + 1e-12), ErrorKind::InvalidArgument,
          "Hamiltonian evaluated outside B_R");
  return {0.5 * problem.alpha * u_val.squaredNorm() + u_val.dot(grad_channel), grad_channel};
}

double exact_increment(const ProblemSpec& problem, const TimeGrid& grid,
                       const ControlSignal& ubar, const ControlSignal& u,
                       const IncrementOptions& options) {
  ubar.check_aligned(grid);
  u.check_aligned(grid);
  const std::vector<double> pieces = merge_partitions(u.breakpoints(), ubar.breakpoints());

  bool identical = true;
  for (std::size_t k = 0; k + 1 < pieces.size() && identical; ++k) {
    identical = u(pieces[k]) == ubar(pieces[k]);
  }
  if (identical) return 0.0;

  const Trajectory traj = propagate(problem, grid, u, 0.0, problem.x0);
  const BackwardProbe probe(problem, grid, ubar, options.epsilon, options.threads);
  auto gradient_at = [&](std::size_t node) {
    return channel_gradient(probe, traj.times[node], traj.states[node]);
  };

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pieces.size(); ++k) {
    const ControlValue& uk = u(pieces[k]);
    const ControlValue& bk = ubar(pieces[k]);
    if (uk == bk) continue;
    const std::size_t a = grid.node_index(pieces[k]);
    const std::size_t b = grid.node_index(pieces[k + 1]);
    const std::size_t twice_centre = a + b - 1;
    ControlValue grad = gradient_at(twice_centre / 2);
    if (twice_centre % 2 == 1) grad = 0.5 * (grad + gradient_at(twice_centre / 2 + 1));
    const double dh = reduced_hamiltonian(problem, grad, uk).value -
                      reduced_hamiltonian(problem, grad, bk).value;
    total += dh * (pieces[k + 1] - pieces[k]);
  }
  return total;
}

}  // namespace mild
