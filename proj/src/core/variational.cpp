#include "mild/variational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace mild {

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  require(a.rows() == a.cols(), ErrorKind::DimensionMismatch, "expm needs a square matrix");
  require(a.allFinite(), ErrorKind::InvalidArgument, "expm needs a finite matrix");
  constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const Eigen::Index n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const Eigen::MatrixXd as = a / std::ldexp(1.0, squarings);

  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd a2 = as * as;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a4 * a2;
  const Eigen::MatrixXd u =
      as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
            b[1] * id);
  const Eigen::MatrixXd v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

namespace {

class MatrixPropagator final : public LinearPropagator {
 public:
  explicit MatrixPropagator(Eigen::MatrixXd m) : m_(std::move(m)) {}
  StateField apply(const StateField& x) const override {
    require_dim(x.size(), m_.cols(), "matrix semigroup input");
    return m_ * x;
  }

 private:
  Eigen::MatrixXd m_;
};

class IdentityPropagator final : public LinearPropagator {
 public:
  StateField apply(const StateField& x) const override { return x; }
};

}  // namespace

MatrixSemigroup::MatrixSemigroup(Eigen::MatrixXd generator) : generator_(std::move(generator)) {
  require(generator_.rows() == generator_.cols() && generator_.rows() >= 1,
          ErrorKind::DimensionMismatch, "semigroup generator must be square");
}

std::shared_ptr<const LinearPropagator> MatrixSemigroup::at(double tau) const {
  require(std::isfinite(tau) && tau >= 0.0, ErrorKind::InvalidArgument,
          "semigroup duration must be >= 0");
  if (tau == 0.0) return std::make_shared<IdentityPropagator>();
  return std::make_shared<MatrixPropagator>(expm(tau * generator_));
}

LinearOracle LinearOracle::linear_cost(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::VectorXd c) {
  LinearOracle o;
  o.a = std::move(a);
  o.b = std::move(b);
  o.c = std::move(c);
  return o;
}

LinearOracle LinearOracle::quadratic_cost(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd q,
                                          Eigen::VectorXd target) {
  LinearOracle o;
  o.a = std::move(a);
  o.b = std::move(b);
  o.q = std::move(q);
  o.target = std::move(target);
  return o;
}

ProblemSpec LinearOracle::to_problem(const Eigen::VectorXd& x0, double alpha, double radius,
                                     double horizon) const {
  const Eigen::Index d = a.rows();
  const Eigen::Index m = b.cols();
  require_dim(b.rows(), d, "oracle input matrix");
  ProblemSpec p;
  p.state_dim = d;
  p.semigroup = std::make_shared<MatrixSemigroup>(a);
  p.drift = [d](double, const StateField&) { return StateField::Zero(d); };
  p.drift_jvp = [d](double, const StateField&, const StateField&) { return StateField::Zero(d); };
  for (Eigen::Index j = 0; j < m; ++j) {
    ControlValue e = ControlValue::Unit(m, j);
    p.channels.push_back(
        {[e](double, const StateField&) { return e; }, b.col(j),
         [m](double, const StateField&, const StateField&) { return ControlValue::Zero(m); }});
  }
  if (c) {
    const Eigen::VectorXd cc = *c;
    require_dim(cc.size(), d, "oracle cost vector");
    p.terminal_cost = {[cc](const StateField& x) { return cc.dot(x); },
                       [cc](const StateField&) { return StateField(cc); }};
  } else {
    require(q.rows() == d && q.cols() == d, ErrorKind::DimensionMismatch,
            "oracle cost matrix must be d x d");
    require_dim(target.size(), d, "oracle target");
    const Eigen::MatrixXd qq = q;
    const Eigen::VectorXd tt = target;
    p.terminal_cost = {[qq, tt](const StateField& x) {
                         const Eigen::VectorXd e = x - tt;
                         return 0.5 * e.dot(qq * e);
                       },
                       [qq, tt](const StateField& x) { return StateField(qq * (x - tt)); }};
  }
  p.alpha = alpha;
  p.radius = radius;
  p.horizon = horizon;
  p.x0 = x0;
  p.validate();
  return p;
}

TangentFlow tangent_flow(const ProblemSpec& problem, const TimeGrid& grid,
                         const ControlSignal& ubar, double s, const StateField& x,
                         const std::vector<StateField>& directions) {
  require(static_cast<bool>(problem.drift_jvp), ErrorKind::MissingField,
          "variational equation needs problem field 'drift_jvp'");
  for (std::size_t j = 0; j < problem.channels.size(); ++j) {
    require(static_cast<bool>(problem.channels[j].g_jvp), ErrorKind::MissingField,
            "variational equation needs problem field 'channels[" + std::to_string(j) +
                "].g_jvp'");
  }
  require_dim(x.size(), problem.state_dim, "initial state");
  for (const auto& h : directions) require_dim(h.size(), problem.state_dim, "tangent direction");
  ubar.check_aligned(grid);

  const ExpEulerStepper stepper(problem, grid);
  const LinearPropagator& semigroup = stepper.semigroup_step();
  const double dt = grid.dt();
  TangentFlow out{x, directions};
  for (std::size_t i = grid.node_index(s); i < grid.n_steps(); ++i) {
    const double t = grid.node(i);
    const ControlValue& u = ubar(t);
    for (auto& d : out.tangents) {
      StateField forcing = problem.drift_jvp(t, out.terminal, d);
      for (const auto& c : problem.channels) {
        const double coeff = u.dot(c.g_jvp(t, out.terminal, d));
        if (coeff != 0.0) forcing.noalias() += coeff * c.h;
      }
      StateField y = d;
      y.noalias() += dt * forcing;
      d = semigroup.apply(y);
    }
    out.terminal = stepper.step(i, out.terminal, u);
  }
  return out;
}

StateField jvp(const ProblemSpec& problem, const TimeGrid& grid, const ControlSignal& ubar,
               double s, const StateField& x, const StateField& h) {
  return std::move(tangent_flow(problem, grid, ubar, s, x, {h}).tangents.front());
}

std::pair<double, double> dp_probe_vs_jvp(const ProblemSpec& problem, const TimeGrid& grid,
                                          const ControlSignal& ubar, double t,
                                          const StateField& x, const StateField& h,
                                          double epsilon) {
  require(std::isfinite(epsilon) && epsilon > 0.0, ErrorKind::InvalidArgument,
          "epsilon must be > 0");
  const TangentFlow flow = tangent_flow(problem, grid, ubar, t, x, {h});
  const double base = problem.terminal_cost.value(flow.terminal);
  StateField shifted = x;
  shifted.noalias() += epsilon * h;
  const double bumped =
      problem.terminal_cost.value(propagate_terminal(problem, grid, ubar, t, shifted));
  const double probe = (bumped - base) / epsilon;
  const double exact =
      problem.inner(problem.terminal_cost.gradient(flow.terminal), flow.tangents.front());
  return {probe, exact};
}

double increment_identity_residual(const ProblemSpec& problem, const TimeGrid& grid,
                                   const ControlSignal& ubar, const ControlSignal& u) {
  u.check_aligned(grid);
  ubar.check_aligned(grid);
  const std::vector<double> pieces = merge_partitions(u.breakpoints(), ubar.breakpoints());
  const Trajectory traj = propagate(problem, grid, u, 0.0, problem.x0);
  const StateField baseline_terminal = propagate_terminal(problem, grid, ubar, 0.0, problem.x0);
  const double direct =
      problem.terminal_cost.value(traj.states.back()) -
      problem.terminal_cost.value(baseline_terminal);

  std::vector<StateField> directions;
  for (const auto& c : problem.channels) directions.push_back(c.h);

  auto channel_derivative = [&](std::size_t node) {
    const TangentFlow flow =
        tangent_flow(problem, grid, ubar, traj.times[node], traj.states[node], directions);
    const StateField grad = problem.terminal_cost.gradient(flow.terminal);
    Eigen::VectorXd pairing(problem.m());
    for (Eigen::Index j = 0; j < problem.m(); ++j) {
      pairing[j] = problem.inner(grad, flow.tangents[static_cast<std::size_t>(j)]);
    }
    return problem.channel_combination(traj.times[node], traj.states[node], pairing);
  };

  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < pieces.size(); ++k) {
    const ControlValue delta = u(pieces[k]) - ubar(pieces[k]);
    if (delta.isZero(0.0)) continue;
    const std::size_t twice_centre =
        grid.node_index(pieces[k]) + grid.node_index(pieces[k + 1]) - 1;
    ControlValue w = channel_derivative(twice_centre / 2);
    if (twice_centre % 2 == 1) w = 0.5 * (w + channel_derivative(twice_centre / 2 + 1));
    integral += delta.dot(w) * (pieces[k + 1] - pieces[k]);
  }
  return std::abs(integral - direct);
}

double backward_invariance_residual(const ProblemSpec& problem, const TimeGrid& grid,
                                    const ControlSignal& ubar, std::size_t stride) {
  require(stride >= 1, ErrorKind::InvalidArgument, "stride must be >= 1");
  const Trajectory traj = propagate(problem, grid, ubar, 0.0, problem.x0);
  const double terminal = problem.terminal_cost.value(traj.states.back());
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    if (i % stride != 0 && i + 1 != traj.states.size()) continue;
    const double p = problem.terminal_cost.value(
        propagate_terminal(problem, grid, ubar, traj.times[i], traj.states[i]));
    worst = std::max(worst, std::abs(p - terminal));
  }
  return worst;
}

}  // namespace mild
