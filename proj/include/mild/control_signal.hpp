#pragma once

#include "mild/types.hpp"

#include <cstddef>
#include <vector>

namespace mild {

class TimeGrid;

/// Piecewise-constant control: value k is held on [t_k, t_{k+1}); the last
/// value is also returned at t = T.
class ControlSignal {
 public:
  ControlSignal(std::vector<double> breakpoints, std::vector<ControlValue> values);

  static ControlSignal constant(const std::vector<double>& breakpoints, const ControlValue& value);
  static ControlSignal zero(const TimeGrid& grid, Eigen::Index m);

  std::size_t n_pieces() const noexcept { return values_.size(); }
  Eigen::Index channels() const noexcept { return values_.front().size(); }
  double horizon() const noexcept { return breakpoints_.back(); }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<ControlValue>& values() const noexcept { return values_; }
  const ControlValue& value(std::size_t k) const { return values_.at(k); }

  /// Index of the piece containing t (right-continuous).
  std::size_t piece_at(double t) const;
  const ControlValue& operator()(double t) const { return values_[piece_at(t)]; }

  /// Largest Euclidean norm over all pieces.
  double max_norm() const;

  /// sum_k |u_k|^2 (t_{k+1} - t_k); exact for piecewise-constant signals.
  double energy() const;

  /// Throws Misaligned unless every breakpoint is a node of `grid` and the horizons agree.
  void check_aligned(const TimeGrid& grid) const;

  /// Same function on the refined partition `breakpoints` (must contain ours).
  ControlSignal refined(const std::vector<double>& breakpoints) const;

  friend bool operator==(const ControlSignal& a, const ControlSignal& b);

 private:
  std::vector<double> breakpoints_;
  std::vector<ControlValue> values_;
};

/// Sorted union of two partitions of the same horizon.
std::vector<double> merge_partitions(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace mild
