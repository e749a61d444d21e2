#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace qdisk {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A nonzero complex number together with one chosen value of its logarithm.
///
/// Holding the pair lets a caller carry a branch of log along a path: each new
/// sample is attached to the branch closest to the previous one, so complex
/// powers built from `log_value` stay continuous.
struct TrackedLog {
  cplx value;
  cplx log_value;

  /// Principal branch, arg in (-pi, pi].
  static TrackedLog principal(cplx value);
  /// Branch with arg in [0, 2pi).
  static TrackedLog with_nonnegative_arg(cplx value);
};

/// Tolerance on the distance difference between the two nearest branches
/// below which `continue_log` refuses to choose.
inline constexpr double kBranchTieTolerance = 1e-6;

/// Attach `next_value` to the branch of log nearest to `prev`.
/// Throws ZeroValue for 0 and AmbiguousBranch on a near tie.
TrackedLog continue_log(const TrackedLog& prev, cplx next_value);

/// Log-space variant: returns `candidate_log + 2 pi i m` with imaginary part
/// nearest to `reference_log`. Used where the value itself under/overflows.
cplx nearest_branch(cplx reference_log, cplx candidate_log);

/// exp(t * log_w). Throws Overflow when Re(t log_w) leaves the double range.
cplx tracked_pow(cplx log_w, cplx t);

/// |exp(t * log_w)| = exp(Re(t log_w)), with the same overflow reporting.
double tracked_pow_abs(cplx log_w, cplx t);

using AnalyticFn = std::function<cplx(cplx)>;
using PathFn = std::function<cplx(double)>;

/// Continue `start` (the log of fn(path(s0))) to s1, bisecting the parameter
/// interval until consecutive values differ by less than half their size.
TrackedLog continue_along(const AnalyticFn& fn, const PathFn& path, const TrackedLog& start,
                          double s0, double s1);

/// Sample grid on a circle of radius r: base_count * 2^level equispaced angles.
class CirclePath {
 public:
  CirclePath(double radius, std::size_t base_count, unsigned level = 0);

  double radius() const { return radius_; }
  std::size_t base_count() const { return base_count_; }
  unsigned level() const { return level_; }
  std::size_t size() const { return base_count_ << level_; }
  bool closed() const { return true; }
  double angle(std::size_t i) const { return kTwoPi * static_cast<double>(i) / static_cast<double>(size()); }
  cplx point(std::size_t i) const { return std::polar(radius_, angle(i)); }
  CirclePath refined() const { return CirclePath(radius_, base_count_, level_ + 1); }

 private:
  double radius_;
  std::size_t base_count_;
  unsigned level_;
};

/// Branch-continued logarithm of an analytic, zero-free function sampled on a
/// circle.
struct CircleLogs {
  CirclePath path;
  std::vector<TrackedLog> logs;
  /// |log at angle 2 pi - log at angle 0| after walking once around.
  double closure_defect = 0.0;
};

/// Walk around the circle starting from `seed` (the log at angle 0).
CircleLogs log_on_circle(const AnalyticFn& fn, const CirclePath& path, const TrackedLog& seed);

/// Double the sample count of `logs` in place. New midpoints are continued
/// from their left neighbour and checked against the right neighbour.
void refine_circle_logs(const AnalyticFn& fn, CircleLogs& logs);

/// Continue from the origin along the segment [0, target], starting with
/// arg fn(0) in [0, 2pi).
TrackedLog radial_seed(const AnalyticFn& fn, cplx target);

}  // namespace qdisk
