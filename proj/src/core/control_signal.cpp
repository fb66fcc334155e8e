#include "mild/control_signal.hpp"

#include "mild/time_grid.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace mild {

ControlSignal::ControlSignal(std::vector<double> breakpoints, std::vector<ControlValue> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  require(!values_.empty(), ErrorKind::InvalidArgument, "control needs at least one piece");
  require(breakpoints_.size() == values_.size() + 1, ErrorKind::InvalidArgument,
          "control needs exactly one more breakpoint than values");
  require(breakpoints_.front() == 0.0, ErrorKind::InvalidArgument,
          "control partition must start at 0");
  for (std::size_t k = 0; k + 1 < breakpoints_.size(); ++k) {
    require(breakpoints_[k] < breakpoints_[k + 1], ErrorKind::InvalidArgument,
            "control partition must be strictly increasing");
  }
  const Eigen::Index m = values_.front().size();
  require(m >= 1, ErrorKind::InvalidArgument, "control values must have m >= 1");
  for (const auto& v : values_) {
    require_dim(v.size(), m, "control value");
    require(v.allFinite(), ErrorKind::InvalidArgument, "control values must be finite");
  }
}

ControlSignal ControlSignal::constant(const std::vector<double>& breakpoints,
                                      const ControlValue& value) {
  return ControlSignal(breakpoints, std::vector<ControlValue>(breakpoints.size() - 1, value));
}

ControlSignal ControlSignal::zero(const TimeGrid& grid, Eigen::Index m) {
  return constant(grid.control_partition(), ControlValue::Zero(m));
}

std::size_t ControlSignal::piece_at(double t) const {
  require(t >= 0.0 && t <= horizon(), ErrorKind::InvalidArgument,
          "control evaluated outside [0,T]");
  if (t == horizon()) return values_.size() - 1;
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return static_cast<std::size_t>(std::distance(breakpoints_.begin(), it)) - 1;
}

double ControlSignal::max_norm() const {
  double best = 0.0;
  for (const auto& v : values_) best = std::max(best, v.norm());
  return best;
}

double ControlSignal::energy() const {
  double total = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    total += values_[k].squaredNorm() * (breakpoints_[k + 1] - breakpoints_[k]);
  }
  return total;
}

void ControlSignal::check_aligned(const TimeGrid& grid) const {
  require(horizon() == grid.horizon(), ErrorKind::Misaligned,
          "control horizon differs from grid horizon");
  for (double t : breakpoints_) grid.node_index(t);
}

ControlSignal ControlSignal::refined(const std::vector<double>& breakpoints) const {
  require(std::includes(breakpoints.begin(), breakpoints.end(), breakpoints_.begin(),
                        breakpoints_.end()),
          ErrorKind::InvalidArgument, "refinement must contain the original partition");
  std::vector<ControlValue> values;
  values.reserve(breakpoints.size() - 1);
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    values.push_back((*this)(breakpoints[k]));
  }
  return ControlSignal(breakpoints, std::move(values));
}

bool operator==(const ControlSignal& a, const ControlSignal& b) {
  if (a.breakpoints_ != b.breakpoints_) return false;
  for (std::size_t k = 0; k < a.values_.size(); ++k) {
    if (a.values_[k].size() != b.values_[k].size() || a.values_[k] != b.values_[k]) return false;
  }
  return true;
}

std::vector<double> merge_partitions(const std::vector<double>& a, const std::vector<double>& b) {
  require(a.back() == b.back(), ErrorKind::InvalidArgument,
          "controls have different horizons");
  std::vector<double> merged;
  merged.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
  return merged;
}

}  // namespace mild
