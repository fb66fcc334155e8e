#include "mild/time_grid.hpp"

#include <cmath>
#include <string>

namespace mild {

TimeGrid::TimeGrid(double horizon, std::size_t n_intervals, std::size_t steps_per_interval)
    : horizon_(horizon), n_intervals_(n_intervals), steps_per_interval_(steps_per_interval) {
  require(std::isfinite(horizon) && horizon > 0.0, ErrorKind::InvalidArgument,
          "horizon must be > 0");
  require(n_intervals >= 1, ErrorKind::InvalidArgument, "n_intervals must be >= 1");
  require(steps_per_interval >= 1, ErrorKind::InvalidArgument,
          "steps_per_interval must be >= 1");
  dt_ = horizon_ / static_cast<double>(n_steps());
  partition_.reserve(n_intervals_ + 1);
  for (std::size_t k = 0; k <= n_intervals_; ++k) partition_.push_back(node(breakpoint_node(k)));
}

TimeGrid TimeGrid::with_max_step(double horizon, std::size_t n_intervals, double max_dt) {
  require(std::isfinite(max_dt) && max_dt > 0.0, ErrorKind::InvalidArgument, "dt must be > 0");
  require(n_intervals >= 1, ErrorKind::InvalidArgument, "n_intervals must be >= 1");
  const double ratio = horizon / (static_cast<double>(n_intervals) * max_dt);
  // Tolerate representation error in ratios that are integral on paper (1/(20*1e-4)).
  auto steps = static_cast<std::size_t>(std::ceil(ratio - 1e-9 * ratio));
  if (steps == 0) steps = 1;
  return TimeGrid(horizon, n_intervals, steps);
}

double TimeGrid::node(std::size_t i) const {
  const std::size_t total = n_steps();
  require(i <= total, ErrorKind::InvalidArgument, "node index out of range");
  if (i == total) return horizon_;
  return horizon_ * static_cast<double>(i) / static_cast<double>(total);
}

bool TimeGrid::is_node(double t) const noexcept {
  if (!(t >= 0.0 && t <= horizon_)) return false;
  const double scaled = t / horizon_ * static_cast<double>(n_steps());
  const auto i = static_cast<std::size_t>(std::llround(scaled));
  return i <= n_steps() && node(i) == t;
}

std::size_t TimeGrid::node_index(double t) const {
  if (!is_node(t)) {
    throw Error(ErrorKind::Misaligned,
                "time " + std::to_string(t) + " is not a node of the integration grid");
  }
  return static_cast<std::size_t>(std::llround(t / horizon_ * static_cast<double>(n_steps())));
}

}  // namespace mild
