#include "fixtures.hpp"
#include "oracles.hpp"

#include "mild/descent.hpp"
#include "mild/increment.hpp"
#include "mild/reaction_diffusion.hpp"

#include <doctest.h>

#include <random>

using namespace mild;
using fixtures::vec;

TEST_CASE("project_ball examples") {
  CHECK(project_ball(1.0, vec({3.0, 4.0})).isApprox(vec({0.6, 0.8}), 1e-15));
  CHECK(project_ball(10.0, vec({3.0, 4.0})) == vec({3.0, 4.0}));
  CHECK(project_ball(5.0, vec({3.0, 4.0})) == vec({3.0, 4.0}));
  CHECK(project_ball(2.0, vec({0.0, 0.0})) == vec({0.0, 0.0}));
}

TEST_CASE("pointwise_minimizer examples") {
  CHECK(pointwise_minimizer(0.2, 20.0, vec({-1.0, 0.0})).isApprox(vec({5.0, 0.0}), 1e-15));
  CHECK(pointwise_minimizer(0.2, 1.0, vec({-1.0, 0.0})).isApprox(vec({1.0, 0.0}), 1e-15));
  CHECK(pointwise_minimizer(0.0, 2.0, vec({0.0, -3.0})).isApprox(vec({0.0, 2.0}), 1e-15));
  CHECK(pointwise_minimizer(0.0, 2.0, vec({0.0, 0.0}), vec({0.5, -0.5})) == vec({0.5, -0.5}));
  CHECK(pointwise_minimizer(2.0, 2.0, vec({0.0, 0.0})) == vec({0.0, 0.0}));
  CHECK_THROWS_AS(pointwise_minimizer(-1.0, 2.0, vec({1.0})), Error);
  CHECK_THROWS_AS(pointwise_minimizer(1.0, 0.0, vec({1.0})), Error);
}

TEST_CASE("pointwise_minimizer beats random points of the ball") {
  std::mt19937_64 rng(404);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int inst = 0; inst < 20; ++inst) {
    const double alpha = inst % 4 == 0 ? 0.0 : 3.0 * unit(rng);
    const double radius = 0.1 + 5.0 * unit(rng);
    ControlValue grad(3);
    for (auto& g : grad) g = 4.0 * gauss(rng);
    const ControlValue best = pointwise_minimizer(alpha, radius, grad);
    REQUIRE(best.norm() <= radius * (1 + 1e-12));
    const double h_best = 0.5 * alpha * best.squaredNorm() + best.dot(grad);
    int violations = 0;
    for (int s = 0; s < 500; ++s) {
      ControlValue v(3);
      for (auto& x : v) x = gauss(rng);
      v *= radius * std::cbrt(unit(rng)) / v.norm();
      if (0.5 * alpha * v.squaredNorm() + v.dot(grad) < h_best - 1e-12) ++violations;
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("pointwise_minimizer is Lipschitz in the gradient for alpha > 0") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  for (int s = 0; s < 1000; ++s) {
    const double alpha = 0.1 + std::abs(gauss(rng));
    const ControlValue g1 = 3.0 * vec({gauss(rng), gauss(rng)});
    const ControlValue g2 = 3.0 * vec({gauss(rng), gauss(rng)});
    const double gap = (pointwise_minimizer(alpha, 1.5, g1) - pointwise_minimizer(alpha, 1.5, g2)).norm();
    CHECK(gap <= (g1 - g2).norm() / alpha * (1 + 1e-12));
  }
}

TEST_CASE("sample_and_hold_update with a constant terminal cost returns zero control") {
  const auto o = fixtures::rotation_oracle_linear_cost();
  ProblemSpec p = o.to_problem(fixtures::unit_x0(), 0.5, 10.0, 1.0);
  p.terminal_cost.value = [](const StateField&) { return 1.0; };
  p.terminal_cost.gradient = [](const StateField& x) { return StateField::Zero(x.size()); };
  const TimeGrid grid(1.0, 8, 20);
  std::mt19937_64 rng(1);
  const ControlSignal ubar = fixtures::random_control(grid, 1, rng);
  const UpdateResult r = sample_and_hold_update(p, grid, DescentConfig{.n_intervals = 8}, ubar);
  CHECK(r.control.max_norm() == 0.0);
}

TEST_CASE("one update on the linear-quadratic oracle decreases the cost as predicted") {
  const auto o = fixtures::rotation_oracle_quadratic_cost();
  const ProblemSpec p = o.to_problem(fixtures::unit_x0(), 0.3, 10.0, 1.0);
  const TimeGrid grid = TimeGrid::with_max_step(1.0, 50, 1e-4);
  const ControlSignal zero = ControlSignal::zero(grid, 1);
  const DescentConfig cfg{.n_intervals = 50, .epsilon = 1e-6};
  const UpdateResult r = sample_and_hold_update(p, grid, cfg, zero);
  const double before = evaluate_cost(p, grid, zero);
  const double after = cost_from_terminal(p, r.control, r.terminal);
  CHECK(after < before);
  CHECK(after == doctest::Approx(evaluate_cost(p, grid, r.control)).epsilon(1e-14));
  const double predicted = exact_increment(p, grid, zero, r.control, {.epsilon = 1e-6});
  CHECK(std::abs(predicted - (after - before)) <= 1e-3 * std::abs(after - before));
}

TEST_CASE("run_descent bookkeeping") {
  const auto o = fixtures::rotation_oracle_quadratic_cost();
  const ProblemSpec p = o.to_problem(fixtures::unit_x0(), 0.3, 10.0, 1.0);
  const TimeGrid grid(1.0, 10, 50);
  const ControlSignal zero = ControlSignal::zero(grid, 1);

  const DescentReport one = run_descent(p, grid, DescentConfig{.n_intervals = 10, .max_iters = 1}, zero);
  CHECK(one.cost_history.size() == 2);
  CHECK(one.controls.size() == 2);
  CHECK(one.terminal_states.size() == 2);
  CHECK(one.controls[0] == zero);
  CHECK(one.stop_reason == StopReason::MaxIterations);

  CHECK(one.cost_history[0] == evaluate_cost(p, grid, zero));
  CHECK_THROWS_AS(run_descent(p, grid, DescentConfig{.n_intervals = 10, .max_iters = 0}, zero), Error);

  CHECK_THROWS_AS(run_descent(p, grid, DescentConfig{.n_intervals = 7}, zero), Error);
}

TEST_CASE("run_descent approaches the continuous linear-quadratic optimum") {
  const auto o = fixtures::rotation_oracle_quadratic_cost();
  const double alpha = 0.3;
  const ProblemSpec p = o.to_problem(fixtures::unit_x0(), alpha, 10.0, 1.0);
  const TimeGrid grid = TimeGrid::with_max_step(1.0, 100, 1e-4);
  const DescentConfig cfg{.n_intervals = 100, .epsilon = 1e-6, .max_iters = 10,
                          .track_increment_residuals = false};
  const DescentReport r = run_descent(p, grid, cfg, ControlSignal::zero(grid, 1));
  for (std::size_t i = 1; i < r.cost_history.size(); ++i) {
    CHECK(r.cost_history[i] <= r.cost_history[i - 1]);
  }
  const double best = oracle::lq_optimum(o.a, o.b, o.q, o.target, fixtures::unit_x0(), alpha, 1.0);
  CHECK(r.rejections == 0);
  CHECK(std::abs(r.cost_history.back() - best) <= 1e-3 * best);
}

TEST_CASE("divergence mid-descent carries the partial report") {
  rd::RDConfig cfg;
  cfg.beta = 5000.0;
  const auto setup = rd::build_problem(cfg);
  const DescentConfig dc{.n_intervals = 30};
  try {
    run_descent(setup.problem, setup.grid, dc, ControlSignal::zero(setup.grid, 2));
    FAIL("expected divergence");
  } catch (const DescentAborted& e) {
    CHECK(e.kind() == ErrorKind::Divergence);
    CHECK(e.partial().cost_history.size() <= 1);
  }
}

TEST_CASE("to_string(StopReason)") {
  CHECK(std::string(to_string(StopReason::MaxIterations)) == "max_iterations");
  CHECK(std::string(to_string(StopReason::Stalled)) == "stalled");
  CHECK(std::string(to_string(StopReason::MonotonicityGuard)) == "monotonicity_guard");
}
