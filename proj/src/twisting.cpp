#include "qdisk/twisting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdisk/errors.hpp"

namespace qdisk {

namespace {

constexpr int kMaxRaySubdivision = 30;

// Follows the branch of log(f((1 - eps) zeta) - f(zeta)) from j0 to j1 in
// units of eps = 2^-j, halving the step while a jump exceeds pi/2.
cplx follow_log_ray(const ConformalMap& f, cplx zeta, cplx previous, double j0, double j1, int depth) {
  const cplx candidate = *f.log_ray_increment(zeta, -j1 * std::log(2.0));
  const cplx aligned = nearest_branch(previous, candidate);
  if (std::abs(aligned.imag() - previous.imag()) <= 0.5 * kPi) return aligned;
  if (depth >= kMaxRaySubdivision) {
    throw Error(ErrorCode::AmbiguousBranch, "ray increment winds too fast near j = " + std::to_string(j1));
  }
  const double mid = 0.5 * (j0 + j1);
  const cplx half = follow_log_ray(f, zeta, previous, j0, mid, depth + 1);
  return follow_log_ray(f, zeta, half, mid, j1, depth + 1);
}

double ratio_of(cplx log_increment) { return log_increment.imag() / log_increment.real(); }

}  // namespace

TwistReport spiral_exponent(const ConformalMap& f, cplx zeta, int j_max) {
  if (f.domain() != Domain::UnitDisk) throw Error(ErrorCode::InvalidArgument, "spiralling is measured for disk maps");
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw Error(ErrorCode::DomainError, "zeta must lie on the unit circle");
  if (j_max < 3) throw Error(ErrorCode::InvalidArgument, "spiral exponent needs j_max >= 3");
  const auto boundary = f.boundary_value(zeta);
  if (!boundary) throw Error(ErrorCode::InvalidArgument, f.family() + " has no known boundary value at zeta");
  const bool log_space = f.log_ray_increment(zeta, -std::log(2.0)).has_value();
  if (!log_space && j_max > kDirectRayLimit) {
    throw Error(ErrorCode::InvalidArgument,
                f.family() + " is evaluated directly; j_max must not exceed " + std::to_string(kDirectRayLimit));
  }

  const cplx endpoint = *boundary;
  const AnalyticFn increment = [&f, zeta, endpoint](cplx tau) { return f.evaluate(tau * zeta) - endpoint; };
  const PathFn along = [](double tau) { return cplx(tau); };

  TwistReport report;
  report.analytic_gamma = f.analytic_gamma(zeta);
  TrackedLog current = continue_along(increment, along, TrackedLog::principal(increment(0.0)), 0.0, 0.5);
  cplx log_value = current.log_value;
  report.levels.push_back({1, 0.5, ratio_of(log_value)});

  for (int j = 2; j <= j_max; ++j) {
    const double tau = 1.0 - std::exp2(-static_cast<double>(j));
    if (log_space) {
      log_value = follow_log_ray(f, zeta, log_value, j - 1, j, 0);
    } else {
      current = continue_along(increment, along, current, 1.0 - std::exp2(-static_cast<double>(j - 1)), tau);
      log_value = current.log_value;
    }
    report.levels.push_back({j, tau, ratio_of(log_value)});
  }

  const std::size_t n = report.levels.size();
  report.gamma_hat = report.levels.back().ratio;
  const double lo = std::min({report.levels[n - 1].ratio, report.levels[n - 2].ratio, report.levels[n - 3].ratio});
  const double hi = std::max({report.levels[n - 1].ratio, report.levels[n - 2].ratio, report.levels[n - 3].ratio});
  report.converged = hi - lo <= 0.02;
  return report;
}

double beurling_gap(double alpha, double gamma) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  return alpha - 0.5 * (1.0 + gamma * gamma);
}

bool beurling_check(double alpha, double gamma) { return beurling_gap(alpha, gamma) >= -1e-12; }

double gamma_max(double k) {
  if (!(k > 0.0 && k < 1.0)) throw Error(ErrorCode::InvalidArgument, "k must lie in (0, 1)");
  return k / std::sqrt(1.0 - k * k);
}

double dim_bound(double k, double gamma) { return std::max(0.0, 2.0 - 2.0 * std::abs(gamma) / gamma_max(k)); }

double k_of_L(double L) {
  if (!(L >= 1.0)) throw Error(ErrorCode::InvalidArgument, "L must be at least 1");
  const double l2 = L * L;
  return (l2 - 1.0) / (l2 + 1.0);
}

LogGrowthReport log_f_over_z_bound(const ConformalMap& normalized, const PolarGrid& grid) {
  if (grid.radii.size() < 2 || grid.angles == 0) throw Error(ErrorCode::InvalidArgument, "empty grid");
  if (!std::is_sorted(grid.radii.begin(), grid.radii.end()) || grid.radii.front() <= 0.0 || grid.radii.back() >= 1.0) {
    throw Error(ErrorCode::InvalidArgument, "grid radii must increase inside (0, 1)");
  }
  const AnalyticFn quotient = [&normalized](cplx z) -> cplx {
    if (z == cplx(0.0)) return normalized.derivative(z);
    return normalized.evaluate(z) / z;
  };
  const TrackedLog at_origin = TrackedLog::principal(quotient(0.0));
  if (std::abs(at_origin.log_value) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "map is not normalized by f'(0) = 1");
  }

  LogGrowthReport report;
  report.per_radius.assign(grid.radii.size(), 0.0);
  for (std::size_t a = 0; a < grid.angles; ++a) {
    const cplx direction = std::polar(1.0, kTwoPi * static_cast<double>(a) / static_cast<double>(grid.angles));
    const PathFn ray = [direction](double s) { return s * direction; };
    TrackedLog current = at_origin;
    double previous = 0.0;
    for (std::size_t i = 0; i < grid.radii.size(); ++i) {
      current = continue_along(quotient, ray, current, previous, grid.radii[i]);
      previous = grid.radii[i];
      report.per_radius[i] = std::max(report.per_radius[i], std::abs(current.log_value));
    }
  }
  report.sup = *std::max_element(report.per_radius.begin(), report.per_radius.end());

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const std::size_t first = grid.radii.size() / 2;
  const double m = static_cast<double>(grid.radii.size() - first);
  for (std::size_t i = first; i < grid.radii.size(); ++i) {
    const double x = -std::log1p(-grid.radii[i]);
    const double y = report.per_radius[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  report.slope = denom > 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
  report.bounded = std::isfinite(report.sup) && report.slope <= kLogGrowthSlopeBound;
  return report;
}

}  // namespace qdisk
