#include "qdisk/integral_means.hpp"

#include <array>
#include <cmath>
#include <string>

#include "qdisk/errors.hpp"

namespace qdisk {

RadiusSchedule::RadiusSchedule(int j_min, int j_max) : j_min_(j_min), j_max_(j_max) {
  if (!(2 <= j_min && j_min < j_max && j_max <= 20)) {
    throw Error(ErrorCode::InvalidArgument, "radius schedule needs 2 <= j_min < j_max <= 20");
  }
}

namespace {

double odd_sample_sum(const CircleLogs& logs, cplx t, std::size_t stride, std::size_t offset) {
  double sum = 0.0;
  for (std::size_t i = offset; i < logs.logs.size(); i += stride) sum += tracked_pow_abs(logs.logs[i].log_value, t);
  return sum;
}

}  // namespace

CircleIntegral circle_integral(const ConformalMap& f, double r, cplx t, const QuadratureOptions& options) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "radius must lie in (0, 1)");
  if (!(options.tol >= 1e-10)) throw Error(ErrorCode::InvalidArgument, "quadrature tolerance below 1e-10");

  const AnalyticFn fp = [&f](cplx z) { return f.derivative(z); };
  CircleLogs logs = log_derivative_on_circle(f, r, options.initial_samples);

  double sum = odd_sample_sum(logs, t, 1, 0);
  double value = r * kTwoPi * sum / static_cast<double>(logs.logs.size());
  while (true) {
    if (2 * logs.logs.size() > options.max_samples) {
      throw Error(ErrorCode::NoConvergence,
                  "circle integral at r = " + std::to_string(r) + " needs more than " +
                      std::to_string(options.max_samples) + " samples");
    }
    refine_circle_logs(fp, logs);
    sum += odd_sample_sum(logs, t, 2, 1);
    const double refined = r * kTwoPi * sum / static_cast<double>(logs.logs.size());
    const double change = std::abs(refined - value) / std::abs(refined);
    value = refined;
    if (change < options.tol) {
      return {value, logs.logs.size(), logs.closure_defect, change};
    }
  }
}

SpectrumEstimate beta_estimate(const ConformalMap& f, cplx t, const RadiusSchedule& schedule, int tail_length,
                               const QuadratureOptions& options) {
  const int slopes = schedule.j_max() - schedule.j_min();
  if (tail_length < 1 || tail_length > slopes) {
    throw Error(ErrorCode::InvalidArgument, "tail length must lie in [1, j_max - j_min]");
  }

  SpectrumEstimate est;
  est.t = t;
  est.tail_length = tail_length;
  for (int j = schedule.j_min(); j <= schedule.j_max(); ++j) {
    const double r = RadiusSchedule::radius(j);
    const CircleIntegral ci = circle_integral(f, r, t, options);
    if (!(ci.value > 0.0) || !std::isfinite(ci.value)) {
      throw Error(ErrorCode::NoConvergence, "nonpositive circle integral at j = " + std::to_string(j));
    }
    est.levels.push_back({j, r, ci.value, ci.samples, ci.closure_defect});
  }

  const double log2 = std::log(2.0);
  for (std::size_t i = 0; i + 1 < est.levels.size(); ++i) {
    est.local_slopes.push_back((std::log(est.levels[i + 1].integral) - std::log(est.levels[i].integral)) / log2);
  }

  const std::size_t first_slope = est.local_slopes.size() - static_cast<std::size_t>(tail_length);
  est.beta_limsup = est.local_slopes[first_slope];
  for (std::size_t i = first_slope; i < est.local_slopes.size(); ++i) {
    est.beta_limsup = std::max(est.beta_limsup, est.local_slopes[i]);
  }

  // Ordinary least squares over the tail_length + 1 levels spanned by the tail.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const std::size_t first_level = first_slope;
  const double m = static_cast<double>(est.levels.size() - first_level);
  for (std::size_t i = first_level; i < est.levels.size(); ++i) {
    const double x = static_cast<double>(est.levels[i].j) * log2;
    const double y = std::log(est.levels[i].integral);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  est.beta_lsq = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return est;
}

namespace {

bool on_critical_circle(double k, cplx t) {
  return std::abs(k * std::abs(t) - 2.0) <= 2.0 * kCriticalCircleTolerance;
}

bool at_least(double a, double b) { return a >= b - kCriticalCircleTolerance * std::max(1.0, std::abs(b)); }

}  // namespace

ReferenceSpectra reference_spectra(double k, cplx t) {
  if (!(k > 0.0 && k < 1.0)) throw Error(ErrorCode::InvalidArgument, "k must lie in (0, 1)");
  if (t == cplx(0.0)) throw Error(ErrorCode::InvalidArgument, "t must be nonzero");
  const double kt = k * std::abs(t);

  ReferenceSpectra out{};
  out.k = k;
  out.t = t;
  out.trivial_upper = kt;
  out.trivial_lower = std::max(0.0, kt - 1.0);
  if (on_critical_circle(k, t) && at_least(t.real(), 2.0)) out.theorem_value = 1.0;
  if (at_least(t.real(), kt) && at_least(kt, 2.0)) out.linear_zone = kt - 1.0;
  out.hedenmalm = (1.0 + 7.0 * k) * (1.0 + 7.0 * k) * kt * kt / 4.0;
  out.disproved_conjecture = kt * kt / 4.0;
  return out;
}

std::string to_string(Integrability region) {
  switch (region) {
    case Integrability::Inside: return "INSIDE";
    case Integrability::CriticalDivergent: return "CRITICAL_DIVERGENT";
    case Integrability::OutsideTheorem: return "OUTSIDE_THEOREM";
  }
  return "UNKNOWN";
}

Integrability integrability_region(double k, cplx t) {
  if (!(k > 0.0 && k < 1.0)) throw Error(ErrorCode::InvalidArgument, "k must lie in (0, 1)");
  const double modulus = std::abs(t);
  if (!at_least(t.real(), k * modulus)) return Integrability::OutsideTheorem;
  if (on_critical_circle(k, t)) return Integrability::CriticalDivergent;
  if (k * modulus < 2.0) return Integrability::Inside;
  return Integrability::OutsideTheorem;
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class Fn>
double kronrod_adaptive(const Fn& fn, double a, double b, double tol, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = fn(center);
  double kronrod = kKronrodWeights[7] * f0;
  double gauss = kGaussWeights[3] * f0;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = fn(center - dx) + fn(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  if (std::abs(kronrod - gauss) <= tol * std::abs(kronrod) || depth >= 24) return kronrod;
  return kronrod_adaptive(fn, a, center, tol, depth + 1) + kronrod_adaptive(fn, center, b, tol, depth + 1);
}

}  // namespace

double area_integral(const ConformalMap& f, cplx t, double r_max, double tol) {
  if (!(r_max > 0.0 && r_max < 1.0)) throw Error(ErrorCode::InvalidArgument, "r_max must lie in (0, 1)");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  QuadratureOptions circle;
  circle.tol = std::max(1e-10, 0.01 * tol);
  const auto integrand = [&](double r) { return circle_integral(f, r, t, circle).value; };

  double total = 0.0;
  double lower = 0.0;
  for (int j = 1; lower < r_max; ++j) {
    const double upper = std::min(r_max, RadiusSchedule::radius(j));
    total += kronrod_adaptive(integrand, lower, upper, tol, 0);
    lower = upper;
  }
  return total;
}

}  // namespace qdisk
