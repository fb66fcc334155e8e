#pragma once

#include "mild/types.hpp"

#include <cstddef>
#include <vector>

namespace mild {

/// Fine integration grid on [0,T] together with a uniform coarse control
/// partition. Every control breakpoint is a fine-grid node by construction:
/// node k*steps_per_interval is breakpoint t_k.
class TimeGrid {
 public:
  TimeGrid(double horizon, std::size_t n_intervals, std::size_t steps_per_interval);

  /// Largest aligned grid whose step does not exceed `max_dt`.
  static TimeGrid with_max_step(double horizon, std::size_t n_intervals, double max_dt);

  double horizon() const noexcept { return horizon_; }
  double dt() const noexcept { return dt_; }
  std::size_t n_intervals() const noexcept { return n_intervals_; }
  std::size_t steps_per_interval() const noexcept { return steps_per_interval_; }
  std::size_t n_steps() const noexcept { return n_intervals_ * steps_per_interval_; }

  /// Time of fine node i, 0 <= i <= n_steps(). node(n_steps()) == horizon() exactly.
  double node(std::size_t i) const;

  /// Index of the fine node located exactly at t. Throws Misaligned otherwise.
  std::size_t node_index(double t) const;
  bool is_node(double t) const noexcept;

  /// Breakpoints t_0 = 0 < ... < t_N = T.
  const std::vector<double>& control_partition() const noexcept { return partition_; }
  std::size_t breakpoint_node(std::size_t k) const noexcept { return k * steps_per_interval_; }

 private:
  double horizon_;
  std::size_t n_intervals_;
  std::size_t steps_per_interval_;
  double dt_;
  std::vector<double> partition_;
};

}  // namespace mild
