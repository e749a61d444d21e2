#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdisk/maps.hpp"

namespace qdisk {

/// Dyadic radii r_j = 1 - 2^-j for j_min <= j <= j_max.
class RadiusSchedule {
 public:
  RadiusSchedule(int j_min, int j_max);

  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  std::size_t size() const { return static_cast<std::size_t>(j_max_ - j_min_ + 1); }
  static double radius(int j) { return 1.0 - std::exp2(-static_cast<double>(j)); }

 private:
  int j_min_;
  int j_max_;
};

struct QuadratureOptions {
  double tol = 1e-9;
  std::size_t initial_samples = 256;
  std::size_t max_samples = std::size_t{1} << 20;
};

struct CircleIntegral {
  double value = 0.0;
  std::size_t samples = 0;
  double closure_defect = 0.0;
  /// Relative change produced by the last doubling.
  double last_change = 0.0;
};

/// Integral of |f'(z)^t| |dz| over |z| = r by the periodic trapezoid rule on
/// branch-continued log f', doubling the sample count until the relative
/// change drops below tol. Throws NoConvergence past max_samples.
CircleIntegral circle_integral(const ConformalMap& f, double r, cplx t, const QuadratureOptions& options = {});

struct RadiusLevel {
  int j;
  double radius;
  double integral;
  std::size_t samples;
  double closure_defect;
};

struct SpectrumEstimate {
  cplx t;
  std::vector<RadiusLevel> levels;
  /// local_slopes[i] belongs to the step levels[i] -> levels[i + 1].
  std::vector<double> local_slopes;
  /// Primary estimate: max of the last tail_length local slopes.
  double beta_limsup = 0.0;
  /// Least-squares slope of log I_j against j log 2 over the tail.
  double beta_lsq = 0.0;
  int tail_length = 0;
};

SpectrumEstimate beta_estimate(const ConformalMap& f, cplx t, const RadiusSchedule& schedule, int tail_length,
                               const QuadratureOptions& options = {});

struct ReferenceSpectra {
  double k;
  cplx t;
  double trivial_upper;
  double trivial_lower;
  std::optional<double> theorem_value;
  std::optional<double> linear_zone;
  double hedenmalm;
  /// k^2 |t|^2 / 4: a conjectured formula known to be false in general.
  double disproved_conjecture;
};

ReferenceSpectra reference_spectra(double k, cplx t);

enum class Integrability { Inside, CriticalDivergent, OutsideTheorem };

std::string to_string(Integrability region);

/// Where t sits relative to the area-integrability range |t| < 2/k, Re t >= k|t|.
Integrability integrability_region(double k, cplx t);

/// Area integral of |f'^t| over |z| < r_max: circle integrals integrated in r
/// by adaptive Gauss-Kronrod on dyadic panels [1 - 2^-j, 1 - 2^-(j+1)].
double area_integral(const ConformalMap& f, cplx t, double r_max, double tol);

/// Relative tolerance used when comparing |t| with 2/k.
inline constexpr double kCriticalCircleTolerance = 1e-12;

}  // namespace qdisk
