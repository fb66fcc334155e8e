#include "mild/problem.hpp"

#include <cmath>

namespace mild {

void ProblemSpec::validate() const {
  require(state_dim >= 1, ErrorKind::InvalidArgument, "state_dim must be >= 1");
  require(semigroup != nullptr, ErrorKind::MissingField, "problem is missing field 'semigroup'");
  require_dim(semigroup->dim(), state_dim, "semigroup");
  require(static_cast<bool>(drift), ErrorKind::MissingField, "problem is missing field 'drift'");
  require(!channels.empty(), ErrorKind::InvalidArgument, "problem needs m >= 1 channels");
  for (const auto& c : channels) {
    require(static_cast<bool>(c.g), ErrorKind::MissingField, "channel is missing field 'g'");
    require_dim(c.h.size(), state_dim, "channel profile h");
  }
  require(static_cast<bool>(terminal_cost.value) && static_cast<bool>(terminal_cost.gradient),
          ErrorKind::MissingField, "problem is missing field 'terminal_cost'");
  require(std::isfinite(alpha) && alpha >= 0.0, ErrorKind::InvalidArgument, "alpha must be >= 0");
  require(std::isfinite(radius) && radius > 0.0, ErrorKind::InvalidArgument, "radius must be > 0");
  require(std::isfinite(horizon) && horizon > 0.0, ErrorKind::InvalidArgument,
          "horizon must be > 0");
  require_dim(x0.size(), state_dim, "initial state");
  require(inner_weight > 0.0, ErrorKind::InvalidArgument, "inner_weight must be > 0");
}

StateField ProblemSpec::control_action(double t, const StateField& x, const ControlValue& u) const {
  require_dim(u.size(), m(), "control value");
  StateField out = StateField::Zero(state_dim);
  for (const auto& c : channels) {
    const double coeff = u.dot(c.g(t, x));
    if (coeff != 0.0) out.noalias() += coeff * c.h;
  }
  return out;
}

ControlValue ProblemSpec::channel_combination(double t, const StateField& x,
                                              const Eigen::VectorXd& d) const {
  require_dim(d.size(), m(), "channel pairing");
  ControlValue out = ControlValue::Zero(m());
  for (Eigen::Index j = 0; j < m(); ++j) {
    out.noalias() += d[j] * channels[static_cast<std::size_t>(j)].g(t, x);
  }
  return out;
}

}  // namespace mild
