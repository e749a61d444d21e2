#include "qdisk/branch.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qdisk/errors.hpp"

namespace qdisk {

namespace {

// Largest x with exp(x) finite.
const double kMaxExponent = std::log(std::numeric_limits<double>::max());

constexpr int kMaxBisection = 48;
constexpr double kStepRatio = 0.5;

}  // namespace

TrackedLog TrackedLog::principal(cplx value) {
  if (value == cplx(0.0)) throw Error(ErrorCode::ZeroValue, "log of zero");
  return {value, std::log(value)};
}

TrackedLog TrackedLog::with_nonnegative_arg(cplx value) {
  TrackedLog out = principal(value);
  if (out.log_value.imag() < 0.0) out.log_value += cplx(0.0, kTwoPi);
  return out;
}

cplx nearest_branch(cplx reference_log, cplx candidate_log) {
  const double d = (reference_log.imag() - candidate_log.imag()) / kTwoPi;
  const double below = std::floor(d);
  // Distances to the two nearest sheets differ by 4 pi |frac - 1/2|.
  if (4.0 * kPi * std::abs(d - below - 0.5) < kBranchTieTolerance) {
    throw Error(ErrorCode::AmbiguousBranch,
                "two branches equidistant at Im log = " + std::to_string(candidate_log.imag()));
  }
  return candidate_log + cplx(0.0, kTwoPi * std::round(d));
}

TrackedLog continue_log(const TrackedLog& prev, cplx next_value) {
  if (next_value == cplx(0.0)) throw Error(ErrorCode::ZeroValue, "continuation hit zero");
  return {next_value, nearest_branch(prev.log_value, std::log(next_value))};
}

cplx tracked_pow(cplx log_w, cplx t) {
  const cplx e = t * log_w;
  if (!std::isfinite(e.real()) || e.real() > kMaxExponent) {
    throw Error(ErrorCode::Overflow, "Re(t log w) = " + std::to_string(e.real()));
  }
  return std::exp(e);
}

double tracked_pow_abs(cplx log_w, cplx t) {
  const double re = (t * log_w).real();
  if (!std::isfinite(re) || re > kMaxExponent) {
    throw Error(ErrorCode::Overflow, "Re(t log w) = " + std::to_string(re));
  }
  return std::exp(re);
}

namespace {

TrackedLog continue_step(const AnalyticFn& fn, const PathFn& path, const TrackedLog& start,
                         double s0, double s1, int depth) {
  const cplx next = fn(path(s1));
  if (next == cplx(0.0)) throw Error(ErrorCode::ZeroValue, "function vanishes on path");
  if (std::abs(next / start.value - 1.0) < kStepRatio) return continue_log(start, next);
  if (depth >= kMaxBisection) {
    throw Error(ErrorCode::AmbiguousBranch, "path step cannot be resolved");
  }
  const double mid = 0.5 * (s0 + s1);
  const TrackedLog half = continue_step(fn, path, start, s0, mid, depth + 1);
  return continue_step(fn, path, half, mid, s1, depth + 1);
}

}  // namespace

TrackedLog continue_along(const AnalyticFn& fn, const PathFn& path, const TrackedLog& start,
                          double s0, double s1) {
  return continue_step(fn, path, start, s0, s1, 0);
}

CirclePath::CirclePath(double radius, std::size_t base_count, unsigned level)
    : radius_(radius), base_count_(base_count), level_(level) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "circle radius must be positive");
  if (base_count == 0) throw Error(ErrorCode::InvalidArgument, "empty circle grid");
}

CircleLogs log_on_circle(const AnalyticFn& fn, const CirclePath& path, const TrackedLog& seed) {
  const double r = path.radius();
  const PathFn arc = [r](double theta) { return std::polar(r, theta); };
  const std::size_t n = path.size();

  CircleLogs out{path, {}, 0.0};
  out.logs.reserve(n);
  out.logs.push_back(seed);
  for (std::size_t i = 1; i < n; ++i) {
    out.logs.push_back(continue_along(fn, arc, out.logs.back(), path.angle(i - 1), path.angle(i)));
  }
  const TrackedLog closing = continue_along(fn, arc, out.logs.back(), path.angle(n - 1), kTwoPi);
  out.closure_defect = std::abs(closing.log_value - seed.log_value);
  return out;
}

void refine_circle_logs(const AnalyticFn& fn, CircleLogs& logs) {
  const CirclePath fine = logs.path.refined();
  const double r = fine.radius();
  const PathFn arc = [r](double theta) { return std::polar(r, theta); };
  const std::size_t n = logs.logs.size();

  std::vector<TrackedLog> merged;
  merged.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const TrackedLog& left = logs.logs[i];
    const double a = fine.angle(2 * i);
    const double b = fine.angle(2 * i + 1);
    TrackedLog mid = continue_along(fn, arc, left, a, b);
    const TrackedLog& right = logs.logs[(i + 1) % n];
    // Continuing the midpoint on to the stored right neighbour must land on
    // the same sheet, except across the seam where the loop closes.
    if (i + 1 < n) {
      const TrackedLog check = continue_along(fn, arc, mid, b, fine.angle(2 * i + 2));
      if (std::abs(check.log_value - right.log_value) > 1e-8) {
        throw Error(ErrorCode::ClosureDefect, "inconsistent branch between refined samples");
      }
    }
    merged.push_back(left);
    merged.push_back(mid);
  }
  logs.logs = std::move(merged);
  logs.path = fine;
}

TrackedLog radial_seed(const AnalyticFn& fn, cplx target) {
  TrackedLog at_origin = TrackedLog::with_nonnegative_arg(fn(cplx(0.0)));
  if (target == cplx(0.0)) return at_origin;
  const PathFn ray = [target](double s) { return s * target; };
  constexpr int kSteps = 16;
  TrackedLog current = at_origin;
  for (int i = 0; i < kSteps; ++i) {
    current = continue_along(fn, ray, current, static_cast<double>(i) / kSteps,
                             static_cast<double>(i + 1) / kSteps);
  }
  return current;
}

}  // namespace qdisk
