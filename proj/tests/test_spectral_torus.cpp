#include "fixtures.hpp"

#include "mild/reaction_diffusion.hpp"
#include "mild/spectral_torus.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace mild;
using namespace mild::torus;

namespace {

StateField random_field(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  StateField x(n);
  for (auto& v : x) v = d(rng);
  return x;
}

}  // namespace

TEST_CASE("torus grid") {
  CHECK_THROWS_AS(TorusGrid(3), Error);
  CHECK_THROWS_AS(TorusGrid(2), Error);
  const TorusGrid g(96);
  CHECK(g.weight() * 96 == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(l2_distance_sq(g, StateField::Ones(96), StateField::Zero(96)) ==
        doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("l2_distance_sq") {
  const TorusGrid g(96);
  const StateField s = g.sample([](double th) { return std::sin(th); });
  CHECK(l2_distance_sq(g, s, s) == 0.0);
  CHECK(std::abs(l2_distance_sq(g, s, StateField::Zero(96)) / std::numbers::pi - 1.0) <= 1e-10);
  CHECK_THROWS_AS(l2_distance_sq(g, s, StateField::Zero(95)), Error);
}

TEST_CASE("heat_apply examples") {
  const TorusGrid g(96);
  const SpectralHeatSemigroup sg(g, 0.1);
  std::mt19937_64 rng(11);
  const StateField x = random_field(96, rng);

  CHECK(heat_apply(sg, 0.0, x) == x);

  const StateField c = StateField::Constant(96, 2.5);
  for (double tau : {0.1, 1.0, 10.0}) {
    CHECK((heat_apply(sg, tau, c).array() - 2.5).abs().maxCoeff() <= 1e-14);
  }

  const StateField cosine = g.sample([](double th) { return std::cos(th); });
  const StateField got = heat_apply(sg, 1.0, cosine);
  const StateField want = std::exp(-0.1) * cosine;
  CHECK((got - want).norm() / want.norm() <= 1e-12);

  CHECK_THROWS_AS(heat_apply(sg, -1e-3, x), Error);
}

TEST_CASE("heat semigroup laws and contraction") {
  const TorusGrid g(96);
  const SpectralHeatSemigroup sg(g, 0.1);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const StateField x = random_field(96, rng);
    std::uniform_real_distribution<double> tau(0.0, 1.0);
    const double t1 = tau(rng);
    const double t2 = tau(rng);
    const StateField composed = heat_apply(sg, t1, heat_apply(sg, t2, x));
    CHECK((heat_apply(sg, t1 + t2, x) - composed).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK(l2_distance_sq(g, heat_apply(sg, t1, x), StateField::Zero(96)) <=
          l2_distance_sq(g, x, StateField::Zero(96)) * (1.0 + 1e-14));
  }
  const Eigen::VectorXd mult = sg.multipliers(0.7);
  CHECK(mult[0] == 1.0);
  for (Eigen::Index k = 1; k < mult.size(); ++k) {
    CHECK(mult[k] > 0.0);
    CHECK(mult[k] <= mult[k - 1]);
  }
}

TEST_CASE("exp_euler_step examples") {
  rd::RDConfig cfg;
  cfg.beta = 0.0;
  const auto setup = rd::build_problem(cfg);
  const SpectralHeatSemigroup& sg = *setup.semigroup;
  const double dt = 1e-3;

  SUBCASE("zero forcing is a pure heat step") {
    const StateField& x = setup.problem.x0;
    const StateField got = exp_euler_step(setup.problem, sg, dt, 0.0, x, fixtures::vec({0.0, 0.0}));
    CHECK((got - heat_apply(sg, dt, x)).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("single Fourier mode forced through channel 1") {
    const StateField got = exp_euler_step(setup.problem, sg, dt, 0.0, StateField::Zero(96),
                                          fixtures::vec({1.0, 0.0}));
    const StateField want =
        dt * std::exp(-0.1 * dt) * setup.torus.sample([](double th) {
          return std::cos(th) / std::sqrt(std::numbers::pi);
        });
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("consistency on a single mode: (step - x)/dt -> A x + f + G u") {
    rd::RDConfig c2;
    const auto s2 = rd::build_problem(c2);
    const StateField x = s2.torus.sample([](double th) { return 0.5 + 0.3 * std::cos(2.0 * th); });
    const ControlValue u = fixtures::vec({0.7, -0.4});
    const StateField ax = s2.torus.sample([](double th) { return -0.1 * 4.0 * 0.3 * std::cos(2.0 * th); });
    const StateField rhs = ax + s2.problem.drift(0.0, x) + s2.problem.control_action(0.0, x, u);
    double previous = 1e300;
    for (double h : {1e-2, 1e-3, 1e-4}) {
      const StateField step = exp_euler_step(s2.problem, *s2.semigroup, h, 0.0, x, u);
      const double err = ((step - x) / h - rhs).cwiseAbs().maxCoeff();
      CHECK(err < previous);
      previous = err;
    }
    CHECK(previous <= 1e-4);
  }
  SUBCASE("non-positive dt is rejected") {
    CHECK_THROWS_AS(exp_euler_step(setup.problem, sg, 0.0, 0.0, setup.problem.x0,
                                   fixtures::vec({0.0, 0.0})),
                    Error);
  }
}
