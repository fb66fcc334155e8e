#include "fixtures.hpp"
#include "oracles.hpp"

#include "mild/evolution.hpp"
#include "mild/reaction_diffusion.hpp"
#include "mild/variational.hpp"

#include <doctest.h>

#include <random>

using namespace mild;
using fixtures::vec;

TEST_CASE("expm agrees with the Taylor oracle") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> gauss;
  for (double scale : {1e-3, 0.5, 3.0, 40.0}) {
    Eigen::MatrixXd m(4, 4);
    for (auto& x : m.reshaped()) x = scale * gauss(rng);
    const Eigen::MatrixXd want = oracle::taylor_expm(m);
    CHECK((expm(m) - want).norm() <= 1e-11 * std::max(1.0, want.norm()));
  }
  CHECK((expm(Eigen::MatrixXd::Zero(3, 3)) - Eigen::MatrixXd::Identity(3, 3)).norm() <= 1e-15);
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag.diagonal() << 1.0, -2.0;
  CHECK(expm(diag)(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(expm(diag)(1, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
}

TEST_CASE("jvp on the linear oracle is the transition matrix") {
  const auto o = fixtures::rotation_oracle_linear_cost();
  const ProblemSpec p = o.to_problem(fixtures::unit_x0(), 0.5, 10.0, 1.0);
  const TimeGrid grid(1.0, 10, 100);
  std::mt19937_64 rng(3);
  const ControlSignal ubar = fixtures::random_control(grid, 1, rng);
  const double s = grid.node(250);
  const StateField h = vec({0.3, -1.2});
  const StateField want = oracle::taylor_expm((1.0 - s) * o.a) * h;
  CHECK((jvp(p, grid, ubar, s, p.x0, h) - want).norm() <= 1e-12);
  CHECK(jvp(p, grid, ubar, 1.0, p.x0, h) == h);
}

TEST_CASE("jvp is linear in the direction on the benchmark") {
  const auto setup = rd::build_problem(rd::RDConfig{});
  const ControlSignal zero = ControlSignal::zero(setup.grid, 2);
  const auto& tor = setup.torus;
  const StateField h1 = tor.sample([](double th) { return std::cos(th); });
  const StateField h2 = tor.sample([](double th) { return std::sin(2.0 * th); });
  const double s = setup.grid.node(setup.grid.breakpoint_node(15));
  const StateField x = propagate_between(setup.problem, setup.grid, zero, 0.0, s, setup.problem.x0);
  const TangentFlow tf = tangent_flow(setup.problem, setup.grid, zero, s, x, {h1, h2, 2.0 * h1 - 3.0 * h2});
  const StateField combo = 2.0 * tf.tangents[0] - 3.0 * tf.tangents[1];
  CHECK((tf.tangents[2] - combo).norm() <= 1e-12 * combo.norm());
  CHECK(tf.terminal == propagate_terminal(setup.problem, setup.grid, zero, s, x));
}

TEST_CASE("tangent_flow requires derivative callbacks") {
  const auto o = fixtures::rotation_oracle_linear_cost();
  ProblemSpec p = o.to_problem(fixtures::unit_x0(), 0.5, 10.0, 1.0);
  const TimeGrid grid(1.0, 2, 10);
  const ControlSignal zero = ControlSignal::zero(grid, 1);
  SUBCASE("drift") {
    p.drift_jvp = nullptr;
    try {
      jvp(p, grid, zero, 0.0, p.x0, p.x0);
      FAIL("expected MissingField");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MissingField);
      CHECK(std::string(e.what()).find("drift_jvp") != std::string::npos);
    }
  }
  SUBCASE("channel") {
    p.channels[0].g_jvp = nullptr;
    CHECK_THROWS_AS(jvp(p, grid, zero, 0.0, p.x0, p.x0), Error);
  }
}

TEST_CASE("dp_probe_vs_jvp") {
  SUBCASE("linear oracle agrees to rounding") {
    const auto o = fixtures::rotation_oracle_linear_cost();
    const ProblemSpec p = o.to_problem(fixtures::unit_x0(), 0.5, 10.0, 1.0);
    const TimeGrid grid(1.0, 10, 100);
    std::mt19937_64 rng(8);
    const ControlSignal ubar = fixtures::random_control(grid, 1, rng);
    const auto [fd, exact] = dp_probe_vs_jvp(p, grid, ubar, grid.node(300), p.x0, vec({1.0, 2.0}), 1e-3);
    CHECK(std::abs(fd - exact) <= 1e-8);
    const double adjoint = o.c->dot(oracle::taylor_expm(0.7 * o.a) * vec({1.0, 2.0}));
    CHECK(exact == doctest::Approx(adjoint).epsilon(1e-11));
  }
  SUBCASE("benchmark gap shrinks linearly in epsilon") {
    const auto setup = rd::build_problem(rd::RDConfig{});
    const ControlSignal zero = ControlSignal::zero(setup.grid, 2);
    const StateField h = setup.problem.channels[0].h;
    std::vector<double> eps{1e-1, 5e-2, 2.5e-2, 1.25e-2};
    std::vector<double> gaps;
    for (double e : eps) {
      const auto [fd, exact] = dp_probe_vs_jvp(setup.problem, setup.grid, zero, 0.0, setup.problem.x0, h, e);
      gaps.push_back(std::abs(fd - exact));
    }
    CHECK(oracle::loglog_slope(eps, gaps) == doctest::Approx(1.0).epsilon(0.1));
  }
}

TEST_CASE("backward invariance") {
  const auto o = fixtures::rotation_oracle_quadratic_cost();
  const ProblemSpec p = o.to_problem(fixtures::unit_x0(), 0.5, 10.0, 1.0);
  const TimeGrid grid(1.0, 10, 20);
  std::mt19937_64 rng(11);
  CHECK(backward_invariance_residual(p, grid, fixtures::random_control(grid, 1, rng)) <= 1e-12);
  const auto setup = rd::build_problem(rd::RDConfig{});
  CHECK(backward_invariance_residual(setup.problem, setup.grid, ControlSignal::zero(setup.grid, 2), 67) <=
        1e-10);
}

TEST_CASE("increment identity residual") {
  SUBCASE("identical controls give zero") {
    const auto setup = rd::build_problem(rd::RDConfig{});
    const ControlSignal zero = ControlSignal::zero(setup.grid, 2);
    CHECK(increment_identity_residual(setup.problem, setup.grid, zero, zero) == 0.0);
  }
  SUBCASE("linear oracle with linear cost is exact up to midpoint quadrature") {
    const auto o = fixtures::rotation_oracle_linear_cost();
    const ProblemSpec p = o.to_problem(fixtures::unit_x0(), 0.5, 10.0, 1.0);
    const TimeGrid grid(1.0, 20, 101);
    std::mt19937_64 rng(12);
    const ControlSignal ubar = fixtures::random_control(grid, 1, rng);
    const ControlSignal u = fixtures::random_control(grid, 1, rng);
    // Midpoint error on pieces of length 0.05 is O(h^2 |A|^2 / 24) per unit time.
    const double coarse = increment_identity_residual(p, grid, ubar, u);
    CHECK(coarse <= 1e-5);
    const TimeGrid fine(1.0, 40, 101);
    const double refined = increment_identity_residual(p, fine, ubar.refined(fine.control_partition()),
                                                       u.refined(fine.control_partition()));
    CHECK(refined <= coarse / 3.0);
  }
  SUBCASE("benchmark residual is second order in the perturbation size") {
    const auto setup = rd::build_problem(rd::RDConfig{});
    const ControlSignal zero = ControlSignal::zero(setup.grid, 2);
    std::mt19937_64 rng(13);
    const ControlSignal dir = fixtures::random_control(setup.grid, 2, rng);
    std::vector<double> deltas{0.4, 0.2, 0.1};
    std::vector<double> res;
    for (double d : deltas) {
      std::vector<ControlValue> vals;
      for (std::size_t k = 0; k < dir.n_pieces(); ++k) vals.push_back(d * dir.value(k));
      const ControlSignal u(dir.breakpoints(), vals);
      res.push_back(increment_identity_residual(setup.problem, setup.grid, zero, u));
    }
    CHECK(oracle::loglog_slope(deltas, res) == doctest::Approx(2.0).epsilon(0.15));
  }
}
