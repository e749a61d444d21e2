#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qdisk/branch.hpp"

namespace qdisk {

/// Values w = Psi(lambda0, 0) reachable by holomorphic Psi: D^2 -> right
/// half-plane with Psi(0, 0) = 1 and Psi(lambda, eta) = conj(Psi(conj eta, conj lambda)),
/// for |lambda0| = k. It is the convex hull of
///
///   disk1 = {|w - 1| <= k}   and   disk2 = {|1/w - 1| <= k},
///
/// the latter being the disk with center 1/(1 - k^2) and radius k/(1 - k^2).
/// Both disks are tangent to the cone |Im w| = k |w|.
class RegionWk {
 public:
  explicit RegionWk(double k);

  double k() const { return k_; }
  cplx center1() const { return 1.0; }
  double radius1() const { return k_; }
  cplx center2() const { return 1.0 / (1.0 - k_ * k_); }
  double radius2() const { return k_ / (1.0 - k_ * k_); }

  /// min over s in [0, 1] of |w - c(s)| - r(s) for the disks interpolating
  /// disk1 (s = 0) and disk2 (s = 1). Nonpositive exactly on the hull.
  double hull_gap(cplx w) const;
  bool contains(cplx w) const { return hull_gap(w) <= kContainsSlack; }

  /// Angle phi in (pi/2, pi) of the outward normal e^{i phi} at the points
  /// where the upper cone line touches the two disks.
  double tangent_angle() const;

  static constexpr double kContainsSlack = 1e-12;

 private:
  double k_;
};

bool contains(cplx w, double k);

struct BoundarySample {
  cplx point;
  cplx outward_normal;
};

/// Counterclockwise vertices of the boundary of W_k, starting at the
/// rightmost point 1/(1 - k): upper arc of disk2, upper tangent segment, left
/// arc of disk1, lower segment, lower arc of disk2. Vertices are spaced
/// uniformly in arc length and the list is closed under conjugation; an odd
/// n is rounded up to the next even count.
std::vector<BoundarySample> boundary_samples(double k, std::size_t n);
std::vector<cplx> boundary_polyline(double k, std::size_t n);

enum class InterpolantKind { First, Second };

/// Extremal interpolants. FIRST reaches disk1 and SECOND reaches disk2.
///   FIRST:  Psi = (1 + l e + c l + conj(c) e) / (1 - l e)
///   SECOND: Psi = (1 - l e) / (1 - i c l + i conj(c) e + l e)
class InterpolantSpec {
 public:
  /// Throws InvalidArgument for |c| > 1 + 1e-14.
  InterpolantSpec(InterpolantKind kind, cplx c);

  InterpolantKind kind() const { return kind_; }
  cplx c() const { return c_; }

 private:
  InterpolantKind kind_;
  cplx c_;
};

cplx psi_first(const InterpolantSpec& spec, cplx lambda, cplx eta);
cplx psi_second(const InterpolantSpec& spec, cplx lambda, cplx eta);
/// Dispatches on spec.kind().
cplx psi(const InterpolantSpec& spec, cplx lambda, cplx eta);

struct InterpolantFailure {
  std::string check;
  cplx lambda;
  cplx eta;
  cplx value;
};

struct InterpolantReport {
  std::size_t samples = 0;
  std::vector<InterpolantFailure> failures;
  bool passed() const { return failures.empty(); }
};

/// Random bidisk checks of Re Psi > 0, Psi(0,0) = 1, the reflection symmetry
/// to 1e-12 and membership of Psi(l0, 0) in W_k for random l0 with |l0| = k.
InterpolantReport verify_interpolant(const InterpolantSpec& spec, double k, std::size_t samples,
                                     std::uint64_t seed);

bool cone_check(cplx w, double k);

/// [1 - k^2, 1]: real parts of the points of W_k on the cone boundary.
std::pair<double, double> two_point_segment(double k);

struct SupportReport {
  cplx t;
  double lam_abs;
  /// max over boundary_polyline(lam_abs, 4096) of Re(t (1 - w)).
  double polyline_max;
  cplx polyline_argmax;
  /// 1 - 1/t.
  cplx predicted;
  /// hull_gap at the predicted point; zero on the boundary.
  double predicted_gap;
  /// Re(t (1 - predicted)) - 1.
  double predicted_value_error;
  /// Distance from the predicted point to the exact set of maximizers.
  double maximizer_distance;
};

/// Checks that Re(t (1 - w)) <= 1 on W_{lam_abs} with equality at w = 1 - 1/t.
/// Requires |t| lam_abs = 1 and Re t >= 1. Throws SupportViolation with the
/// witness when a check fails.
SupportReport tangent_support(cplx t, double lam_abs);

/// Sample points Psi(l0, 0) from FIRST and SECOND interpolants with |l0| = k,
/// together with convex averages of one of each.
std::vector<cplx> achievable_points(double k, std::size_t count, std::uint64_t seed);

/// Largest distance from a point of a square grid of the given step inside
/// W_k to the nearest of `points`.
double coverage_distance(double k, const std::vector<cplx>& points, double grid_step);

}  // namespace qdisk
