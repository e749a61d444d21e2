#include "qdisk/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qdisk/errors.hpp"

namespace qdisk {

namespace {

constexpr double kSigmaSlack = 1e-12;
constexpr double kSingularRadius = 1e-12;
constexpr double kUnitCircleSlack = 1e-12;

bool same_point(cplx a, cplx b) { return std::abs(a - b) <= kUnitCircleSlack; }

// log z with arg in [0, pi] on the closed upper half-plane.
cplx upper_log(cplx z) {
  double arg = std::atan2(z.imag(), z.real());
  if (z.imag() == 0.0 && z.real() < 0.0) arg = kPi;
  return {std::log(std::abs(z)), arg};
}

// h / (1 + h)^2 evaluated from whichever of h, 1/h has modulus <= 1.
cplx h_over_one_plus_h_squared(cplx sigma_log_s) {
  const cplx u = std::exp(sigma_log_s.real() <= 0.0 ? sigma_log_s : -sigma_log_s);
  return u / ((1.0 + u) * (1.0 + u));
}

}  // namespace

PowerExponent::PowerExponent(cplx sigma) : sigma_(sigma) {
  if (!std::isfinite(sigma.real()) || !std::isfinite(sigma.imag())) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be finite");
  }
  if (sigma == cplx(0.0)) throw Error(ErrorCode::InvalidArgument, "sigma = 0 is not injective");
  if (std::abs(sigma - 1.0) > 1.0 + kSigmaSlack) {
    throw Error(ErrorCode::InvalidArgument,
                "|sigma - 1| = " + std::to_string(std::abs(sigma - 1.0)) + " exceeds 1");
  }
}

double distortion_k(const PowerExponent& exponent) {
  const double k = std::abs(exponent.sigma() - 1.0);
  if (k >= 1.0 - kSigmaSlack) {
    throw Error(ErrorCode::NotExtendable, "|sigma - 1| = 1: extension degenerates");
  }
  return k;
}

ScalingRotation alpha_gamma(const PowerExponent& exponent) {
  const cplx s = exponent.sigma();
  return {1.0 / s.real(), s.imag() / s.real()};
}

cplx moebius_to_half_plane(cplx z) { return cplx(0.0, 1.0) * (1.0 - z) / (1.0 + z); }

// --- identity -------------------------------------------------------------

cplx IdentityMap::evaluate(cplx z) const { return z; }
cplx IdentityMap::derivative(cplx) const { return 1.0; }

std::optional<cplx> IdentityMap::log_ray_increment(cplx zeta, double log_eps) const {
  return log_eps + std::log(-zeta);
}

// --- quadratic ------------------------------------------------------------

QuadraticMap::QuadraticMap(cplx a) : a_(a) {
  if (std::abs(a) > 0.5 + kSigmaSlack) {
    throw Error(ErrorCode::InvalidArgument, "z + a z^2 is univalent on the disk only for |a| <= 1/2");
  }
}

cplx QuadraticMap::evaluate(cplx z) const { return z + a_ * z * z; }
cplx QuadraticMap::derivative(cplx z) const { return 1.0 + 2.0 * a_ * z; }

// --- half-plane power -----------------------------------------------------

cplx HalfPlanePowerMap::evaluate(cplx z) const {
  if (z == cplx(0.0)) throw Error(ErrorCode::SingularPoint, "z^sigma at z = 0");
  if (z.imag() < 0.0) throw Error(ErrorCode::DomainError, "point below the real axis");
  return std::exp(exponent_.sigma() * upper_log(z));
}

cplx HalfPlanePowerMap::derivative(cplx z) const {
  if (z == cplx(0.0)) throw Error(ErrorCode::SingularPoint, "z^sigma at z = 0");
  if (z.imag() < 0.0) throw Error(ErrorCode::DomainError, "point below the real axis");
  const cplx s = exponent_.sigma();
  return s * std::exp((s - 1.0) * upper_log(z));
}

std::optional<double> HalfPlanePowerMap::distortion() const { return distortion_k(exponent_); }

// --- disk power -----------------------------------------------------------

DiskPowerMap::DiskPowerMap(cplx sigma)
    : exponent_(sigma), g0_(std::exp(cplx(0.0, 0.5 * kPi) * sigma)) {}

void DiskPowerMap::check_point(cplx z) const {
  if (std::abs(z - 1.0) < kSingularRadius) throw Error(ErrorCode::SingularPoint, "z = 1");
  if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::DomainError, "point outside the open unit disk");
}

cplx DiskPowerMap::evaluate(cplx z) const {
  check_point(z);
  const cplx e = exponent_.sigma() * std::log((1.0 - z) / (1.0 + z));
  if (e.real() > 0.0) return g0_ * 2.0 / (1.0 + std::exp(-e));
  const cplx h = std::exp(e);
  return g0_ * 2.0 * h / (1.0 + h);
}

cplx DiskPowerMap::derivative(cplx z) const {
  check_point(z);
  const cplx sigma = exponent_.sigma();
  const cplx e = sigma * std::log((1.0 - z) / (1.0 + z));
  return -4.0 * sigma * g0_ * h_over_one_plus_h_squared(e) / (1.0 - z * z);
}

std::optional<double> DiskPowerMap::distortion() const { return distortion_k(exponent_); }

std::optional<cplx> DiskPowerMap::boundary_value(cplx zeta) const {
  if (std::abs(std::abs(zeta) - 1.0) > kUnitCircleSlack) return std::nullopt;
  if (same_point(zeta, 1.0)) return cplx(0.0);
  if (same_point(zeta, -1.0)) return 2.0 * g0_;
  const cplx s = (1.0 - zeta) / (1.0 + zeta);
  // s is purely imaginary; the interior limit of arg s is +-pi/2.
  const cplx log_s(std::log(std::abs(s)), s.imag() > 0.0 ? 0.5 * kPi : -0.5 * kPi);
  const cplx e = exponent_.sigma() * log_s;
  if (e.real() > 0.0) return g0_ * 2.0 / (1.0 + std::exp(-e));
  const cplx h = std::exp(e);
  return g0_ * 2.0 * h / (1.0 + h);
}

std::optional<cplx> DiskPowerMap::log_ray_increment(cplx zeta, double log_eps) const {
  const cplx sigma = exponent_.sigma();
  const double eps = std::exp(log_eps);
  const double log_two_minus_eps = std::log(2.0) + std::log1p(-0.5 * eps);
  if (zeta == cplx(1.0)) {
    // f(1 - eps) = g0 * 2h/(1 + h),  s = eps / (2 - eps).
    const cplx e = sigma * (log_eps - log_two_minus_eps);
    return cplx(0.0, 0.5 * kPi) * sigma + std::log(2.0) + e - std::log(1.0 + std::exp(e));
  }
  if (zeta == cplx(-1.0)) {
    // f(-1 + eps) - 2 g0 = -2 g0 / (1 + h),  s = (2 - eps) / eps.
    const cplx e = sigma * (log_two_minus_eps - log_eps);
    return std::log(-2.0 * g0_) - e - std::log(1.0 + std::exp(-e));
  }
  return std::nullopt;
}

std::optional<double> DiskPowerMap::analytic_gamma(cplx zeta) const {
  if (std::abs(std::abs(zeta) - 1.0) > kUnitCircleSlack) return std::nullopt;
  if (same_point(zeta, 1.0) || same_point(zeta, -1.0)) return alpha_gamma(exponent_).gamma;
  return 0.0;
}

double DiskPowerMap::analytic_beta(cplx t) const {
  return std::max(0.0, ((1.0 - exponent_.sigma()) * t).real() - 1.0);
}

// --- normalized -----------------------------------------------------------

NormalizedDiskMap::NormalizedDiskMap(MapPtr base) : base_(std::move(base)) {
  if (!base_ || base_->domain() != Domain::UnitDisk) {
    throw Error(ErrorCode::InvalidArgument, "normalization needs a disk map");
  }
  shift_ = base_->evaluate(0.0);
  scale_ = base_->derivative(0.0);
  if (scale_ == cplx(0.0)) throw Error(ErrorCode::InvalidArgument, "f'(0) = 0");
}

cplx NormalizedDiskMap::evaluate(cplx z) const { return (base_->evaluate(z) - shift_) / scale_; }

cplx NormalizedDiskMap::derivative(cplx z) const {
  if (z == cplx(0.0)) return 1.0;
  return base_->derivative(z) / scale_;
}

std::optional<cplx> NormalizedDiskMap::boundary_value(cplx zeta) const {
  const auto b = base_->boundary_value(zeta);
  if (!b) return std::nullopt;
  return (*b - shift_) / scale_;
}

std::optional<cplx> NormalizedDiskMap::log_ray_increment(cplx zeta, double log_eps) const {
  const auto b = base_->log_ray_increment(zeta, log_eps);
  if (!b) return std::nullopt;
  return *b - std::log(scale_);
}

// --- rotated --------------------------------------------------------------

RotatedMap::RotatedMap(MapPtr base, double theta) : base_(std::move(base)), rotation_(std::polar(1.0, theta)) {
  if (!base_ || base_->domain() != Domain::UnitDisk) {
    throw Error(ErrorCode::InvalidArgument, "rotation needs a disk map");
  }
}

cplx RotatedMap::evaluate(cplx z) const { return std::conj(rotation_) * base_->evaluate(rotation_ * z); }
cplx RotatedMap::derivative(cplx z) const { return base_->derivative(rotation_ * z); }

// --- free functions -------------------------------------------------------

double default_fd_step(cplx z) { return 1e-5 * std::max(1.0, std::abs(z)); }

cplx beltrami_fd(const AnalyticFn& f, cplx z, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
  const cplx ih(0.0, h);
  const cplx dx = (f(z + h) - f(z - h)) / (4.0 * h);
  const cplx dy = (f(z + ih) - f(z - ih)) / (4.0 * ih);
  const cplx dz = dx + dy;
  const cplx dzbar = dx - dy;
  if (std::abs(dz) < 1e-12) throw Error(ErrorCode::DegenerateJacobian, "|d f| below 1e-12");
  return dzbar / dz;
}

CircleLogs log_derivative_on_circle(const ConformalMap& f, double r, std::size_t n) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "radius must lie in (0, 1)");
  if (n < 64) throw Error(ErrorCode::InvalidArgument, "need at least 64 samples");
  const AnalyticFn fp = [&f](cplx z) { return f.derivative(z); };
  const TrackedLog seed = radial_seed(fp, cplx(r, 0.0));
  CircleLogs logs = log_on_circle(fp, CirclePath(r, n), seed);
  for (int round = 0; round < 2 && logs.closure_defect > 1e-8; ++round) {
    logs = log_on_circle(fp, logs.path.refined(), seed);
  }
  if (logs.closure_defect > 1e-8) {
    throw Error(ErrorCode::ClosureDefect,
                "log f' does not close on |z| = " + std::to_string(r) + " (defect " +
                    std::to_string(logs.closure_defect) + ")");
  }
  return logs;
}

PolarGrid dyadic_polar_grid(std::size_t count, double depth, std::size_t angles) {
  PolarGrid grid;
  grid.angles = angles;
  for (std::size_t i = 1; i <= count; ++i) {
    grid.radii.push_back(1.0 - std::exp2(-depth * static_cast<double>(i) / static_cast<double>(count)));
  }
  return grid;
}

double pointwise_bound_margin(const ConformalMap& normalized, double k, const PolarGrid& grid) {
  const AnalyticFn quotient = [&normalized](cplx z) -> cplx {
    if (z == cplx(0.0)) return 1.0;
    return z * normalized.derivative(z) / normalized.evaluate(z);
  };
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < grid.angles; ++a) {
    const cplx direction = std::polar(1.0, kTwoPi * static_cast<double>(a) / static_cast<double>(grid.angles));
    const PathFn ray = [direction](double s) { return s * direction; };
    TrackedLog current{1.0, 0.0};
    double previous = 0.0;
    for (double r : grid.radii) {
      current = continue_along(quotient, ray, current, previous, r);
      previous = r;
      const double bound = k * (std::log1p(r) - std::log1p(-r));
      margin = std::min(margin, bound - std::abs(current.log_value));
    }
  }
  return margin;
}

}  // namespace qdisk
