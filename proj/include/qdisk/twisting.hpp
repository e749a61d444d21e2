#pragma once

#include <optional>
#include <vector>

#include "qdisk/maps.hpp"

namespace qdisk {

struct TwistLevel {
  int j;
  /// 1 - 2^-j; rounds to 1 once j exceeds the double mantissa.
  double tau;
  double ratio;
};

struct TwistReport {
  double gamma_hat = 0.0;
  std::vector<TwistLevel> levels;
  bool converged = false;
  std::optional<double> analytic_gamma;
};

/// Largest j_max accepted for maps that can only be evaluated directly.
inline constexpr int kDirectRayLimit = 40;

/// ratio_j = arg(f(tau_j zeta) - f(zeta)) / log|f(tau_j zeta) - f(zeta)| for
/// tau_j = 1 - 2^-j, j = 1..j_max, with the arg continued along the ray from
/// tau = 0. Maps that provide log_ray_increment are followed in log(1 - tau)
/// and accept any j_max; other maps need boundary_value and j_max <= 40.
/// converged means the last three ratios lie within 0.02 of each other.
TwistReport spiral_exponent(const ConformalMap& f, cplx zeta, int j_max);

/// alpha - (1 + gamma^2)/2.
double beurling_gap(double alpha, double gamma);
/// alpha >= (1 + gamma^2)/2 - 1e-12.
bool beurling_check(double alpha, double gamma);

/// k / sqrt(1 - k^2).
double gamma_max(double k);
/// max(0, 2 - 2|gamma| / gamma_max(k)) = max(0, 2 - 2 sqrt(1 - k^2) |gamma| / k).
double dim_bound(double k, double gamma);
/// (L^2 - 1)/(L^2 + 1).
double k_of_L(double L);

struct LogGrowthReport {
  /// sup over the whole grid of |log(f(z)/z)|.
  double sup = 0.0;
  /// sup over each circle of the grid.
  std::vector<double> per_radius;
  /// Least-squares slope of per_radius against log(1/(1 - r)) over the outer
  /// half of the radii.
  double slope = 0.0;
  bool bounded = false;
};

inline constexpr double kLogGrowthSlopeBound = 0.05;

/// |log(f(z)/z)| on the grid, continued radially from log(f/z)(0) = 0.
/// Requires a map normalized by f(0) = 0, f'(0) = 1.
LogGrowthReport log_f_over_z_bound(const ConformalMap& normalized, const PolarGrid& grid);

}  // namespace qdisk
