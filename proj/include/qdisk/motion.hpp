#pragma once

#include "qdisk/branch.hpp"

namespace qdisk {

/// 1/sigma = ((1 - lambda)/(1 + lambda) + (1 - eta)/(1 + eta)) / 2,
/// i.e. sigma = (1 + lambda)(1 + eta)/(1 - lambda eta).
cplx sigma_of(cplx lambda, cplx eta);

/// Two radial stretchings welded along the real axis:
///
///   f(z) = ((z/|z|) |z|^{s+})^{sigma/s+}   for Im z >= 0, arg z in [0, pi]
///   f(z) = ((z/|z|) |z|^{s-})^{sigma/s-}   for Im z < 0,  arg z in (-pi, 0)
///
/// with s+ = (1 + lambda)/(1 - lambda), s- = (1 + eta)/(1 - eta). The two
/// halves match on the negative axis because sigma/s+ + sigma/s- = 2.
/// The Beltrami coefficient is lambda z/zbar above the axis and eta z/zbar below.
class WeldedStretch {
 public:
  /// Throws DomainError unless |lambda| < 1 and |eta| < 1.
  WeldedStretch(cplx lambda, cplx eta);

  cplx lambda() const { return lambda_; }
  cplx eta() const { return eta_; }
  cplx sigma_plus() const { return sigma_plus_; }
  cplx sigma_minus() const { return sigma_minus_; }
  cplx sigma() const { return sigma_; }
  /// max(|lambda|, |eta|).
  double distortion() const;

 private:
  cplx lambda_;
  cplx eta_;
  cplx sigma_plus_;
  cplx sigma_minus_;
  cplx sigma_;
};

/// Throws OriginSingularity at z = 0 unless origin_is_zero is set.
cplx evaluate_motion(const WeldedStretch& m, cplx z, bool origin_is_zero = false);

/// Limits of the upper and lower formulas at a nonzero real x.
struct WeldLimits {
  cplx from_upper;
  cplx from_lower;
};

WeldLimits weld_limits(const WeldedStretch& m, double x);

/// lambda mu(z) above the axis, eta conj(mu(conj z)) below, with mu(z) = z/zbar.
cplx motion_beltrami(const WeldedStretch& m, cplx z);

struct BeltramiCheck {
  cplx estimate;
  cplx expected;
  double abs_error;
  /// abs_error / |expected|, or abs_error when expected vanishes.
  double rel_error;
};

/// Compares beltrami_fd of the motion at z (Im z != 0) with motion_beltrami.
BeltramiCheck motion_beltrami_check(const WeldedStretch& m, cplx z, double h);

/// Largest |d f / d conj(lambda)| and |d f / d conj(eta)| at fixed z, by central
/// differences of the given step, relative to max(1, |f|).
double parameter_cr_residual(cplx lambda, cplx eta, cplx z, double step);

/// The same motion transported to the unit circle. With T(z) = i(z + 1)/(z - 1),
/// which sends the disk to the lower half-plane and 1 to infinity,
///
///   F = N o T^{-1} o f o T,
///
/// where the Moebius map N is chosen so that F fixes 0, 1 and infinity.
/// The disk carries the eta-half of the welding and the exterior the
/// lambda-half, and F(z) = 1/conj(F'(1/conj z)) for the motion F' with
/// parameters (conj eta, conj lambda).
class CircleWeldedMotion {
 public:
  explicit CircleWeldedMotion(const WeldedStretch& m);

  const WeldedStretch& motion() const { return motion_; }
  cplx operator()(cplx z) const;

 private:
  cplx conjugated(cplx z) const;

  WeldedStretch motion_;
  cplx a_;
  cplx b_;
  cplx scale_;
};

}  // namespace qdisk
