#pragma once

#include "mild/variational.hpp"

#include <random>

namespace fixtures {

inline mild::LinearOracle rotation_oracle_linear_cost() {
  Eigen::MatrixXd a(2, 2);
  a << -0.2, 1.0, -1.0, -0.1;
  Eigen::MatrixXd b(2, 1);
  b << 0.3, 1.0;
  Eigen::VectorXd c(2);
  c << 1.0, -0.5;
  return mild::LinearOracle::linear_cost(a, b, c);
}

inline mild::LinearOracle rotation_oracle_quadratic_cost() {
  auto o = rotation_oracle_linear_cost();
  Eigen::VectorXd target(2);
  target << 0.5, -1.0;
  return mild::LinearOracle::quadratic_cost(o.a, o.b, Eigen::MatrixXd::Identity(2, 2), target);
}

inline Eigen::VectorXd unit_x0() {
  Eigen::VectorXd x0(2);
  x0 << 1.0, 0.0;
  return x0;
}

/// Piecewise-constant signal on the grid partition with entries U(lo, hi).
inline mild::ControlSignal random_control(const mild::TimeGrid& grid, Eigen::Index m,
                                          std::mt19937_64& rng, double lo = -1.0,
                                          double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<mild::ControlValue> vals;
  for (std::size_t k = 0; k < grid.n_intervals(); ++k) {
    mild::ControlValue v(m);
    for (Eigen::Index j = 0; j < m; ++j) v[j] = dist(rng);
    vals.push_back(v);
  }
  return mild::ControlSignal(grid.control_partition(), vals);
}

inline mild::ControlValue vec(std::initializer_list<double> xs) {
  mild::ControlValue v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace fixtures
