#include "mild/spectral_torus.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <vector>

namespace mild::torus {

namespace {

// fftw_plan_* is not thread-safe; fftw_execute_dft_* on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

class FftPlans {
 public:
  explicit FftPlans(int n) : n_(n) {
    std::vector<double> real(static_cast<std::size_t>(n));
    std::vector<fftw_complex> spec(static_cast<std::size_t>(n / 2 + 1));
    const std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_r2c_1d(n, real.data(), spec.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    backward_ = fftw_plan_dft_c2r_1d(n, spec.data(), real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (forward_ == nullptr || backward_ == nullptr) {
      throw Error(ErrorKind::InvalidArgument, "FFTW planning failed");
    }
  }
  ~FftPlans() {
    const std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  /// out = IFFT(scale .* FFT(in)); `scale` already carries the 1/n normalization.
  /// The c2r layout discards the imaginary part of the Nyquist and DC bins, so
  /// the result is real by construction.
  StateField filter(const StateField& in, const Eigen::VectorXd& scale) const {
    const auto half = static_cast<std::size_t>(n_ / 2 + 1);
    std::vector<double> real(in.data(), in.data() + in.size());
    std::vector<fftw_complex> spec(half);
    fftw_execute_dft_r2c(forward_, real.data(), spec.data());
    for (std::size_t k = 0; k < half; ++k) {
      spec[k][0] *= scale[static_cast<Eigen::Index>(k)];
      spec[k][1] *= scale[static_cast<Eigen::Index>(k)];
    }
    StateField out(n_);
    fftw_execute_dft_c2r(backward_, spec.data(), out.data());
    return out;
  }

 private:
  int n_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

namespace {

class HeatPropagator final : public LinearPropagator {
 public:
  HeatPropagator(std::shared_ptr<const FftPlans> plans, Eigen::VectorXd scale, bool identity)
      : plans_(std::move(plans)), scale_(std::move(scale)), identity_(identity) {}

  StateField apply(const StateField& x) const override {
    require_dim(x.size(), 2 * (scale_.size() - 1), "heat semigroup input");
    if (identity_) return x;
    return plans_->filter(x, scale_);
  }

 private:
  std::shared_ptr<const FftPlans> plans_;
  Eigen::VectorXd scale_;
  bool identity_;
};

}  // namespace

TorusGrid::TorusGrid(Eigen::Index n) : n_(n) {
  require(n >= 4 && n % 2 == 0, ErrorKind::InvalidArgument,
          "torus grid size must be even and >= 4");
  weight_ = 2.0 * std::numbers::pi / static_cast<double>(n);
}

double TorusGrid::theta(Eigen::Index i) const {
  return 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_);
}

Eigen::VectorXd TorusGrid::nodes() const {
  Eigen::VectorXd out(n_);
  for (Eigen::Index i = 0; i < n_; ++i) out[i] = theta(i);
  return out;
}

StateField TorusGrid::sample(const std::function<double(double)>& fn) const {
  StateField out(n_);
  for (Eigen::Index i = 0; i < n_; ++i) out[i] = fn(theta(i));
  return out;
}

SpectralHeatSemigroup::SpectralHeatSemigroup(const TorusGrid& grid, double nu)
    : grid_(grid), nu_(nu), plans_(std::make_shared<FftPlans>(static_cast<int>(grid.size()))) {
  require(std::isfinite(nu) && nu > 0.0, ErrorKind::InvalidArgument, "nu must be > 0");
}

SpectralHeatSemigroup::~SpectralHeatSemigroup() = default;

Eigen::VectorXd SpectralHeatSemigroup::multipliers(double tau) const {
  require(std::isfinite(tau) && tau >= 0.0, ErrorKind::InvalidArgument,
          "semigroup duration must be >= 0");
  const Eigen::Index half = grid_.size() / 2 + 1;
  Eigen::VectorXd out(half);
  for (Eigen::Index k = 0; k < half; ++k) {
    const auto kk = static_cast<double>(k);
    out[k] = std::exp(-nu_ * kk * kk * tau);
  }
  return out;
}

std::shared_ptr<const LinearPropagator> SpectralHeatSemigroup::at(double tau) const {
  Eigen::VectorXd scale = multipliers(tau) / static_cast<double>(grid_.size());
  return std::make_shared<HeatPropagator>(plans_, std::move(scale), tau == 0.0);
}

StateField heat_apply(const SpectralHeatSemigroup& sg, double tau, const StateField& x) {
  return sg.apply(tau, x);
}

StateField exp_euler_step(const ProblemSpec& problem, const SpectralHeatSemigroup& sg, double dt,
                          double t, const StateField& x, const ControlValue& u) {
  require(std::isfinite(dt) && dt > 0.0, ErrorKind::InvalidArgument, "dt must be > 0");
  require_dim(x.size(), sg.dim(), "state");
  StateField forcing = problem.drift(t, x);
  forcing.noalias() += problem.control_action(t, x, u);
  // S_dt x + dt S_dt F == S_dt (x + dt F) by linearity; one transform pair.
  StateField y = x;
  y.noalias() += dt * forcing;
  return sg.apply(dt, y);
}

double l2_distance_sq(const TorusGrid& grid, const StateField& x, const StateField& y) {
  require_dim(x.size(), grid.size(), "l2 distance lhs");
  require_dim(y.size(), grid.size(), "l2 distance rhs");
  return (x - y).squaredNorm() * grid.weight();
}

}  // namespace mild::torus
