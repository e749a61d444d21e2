#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qdisk/branch.hpp"

namespace qdisk {

enum class Domain { UnitDisk, UpperHalfPlane };

/// Closed-form conformal map with an explicit derivative.
///
/// Disk families also expose what the boundary estimators need: the limit
/// value at a boundary point and, where it is known in closed form, the
/// logarithm of f((1 - eps) zeta) - f(zeta) computed without forming 1 - eps,
/// so that rays can be followed far past double-precision resolution of tau.
class ConformalMap {
 public:
  virtual ~ConformalMap() = default;

  virtual std::string family() const = 0;
  virtual Domain domain() const = 0;
  virtual cplx evaluate(cplx z) const = 0;
  virtual cplx derivative(cplx z) const = 0;

  /// Distortion k of the known quasiconformal extension, if any.
  virtual std::optional<double> distortion() const { return std::nullopt; }

  /// Limit of f at a point of the unit circle.
  virtual std::optional<cplx> boundary_value(cplx /*zeta*/) const { return std::nullopt; }

  /// Some branch of log(f((1 - eps) zeta) - f(zeta)) with eps = exp(log_eps).
  virtual std::optional<cplx> log_ray_increment(cplx /*zeta*/, double /*log_eps*/) const {
    return std::nullopt;
  }

  /// Exact spiralling rate at a boundary point, when the family knows it.
  virtual std::optional<double> analytic_gamma(cplx /*zeta*/) const { return std::nullopt; }
};

using MapPtr = std::shared_ptr<const ConformalMap>;

/// Complex exponent sigma of a power map, restricted to the injectivity disk
/// |sigma - 1| <= 1, sigma != 0.
class PowerExponent {
 public:
  explicit PowerExponent(cplx sigma);

  cplx sigma() const { return sigma_; }

 private:
  cplx sigma_;
};

/// |sigma - 1|; throws NotExtendable on the circle |sigma - 1| = 1.
double distortion_k(const PowerExponent& exponent);

struct ScalingRotation {
  double alpha;
  double gamma;
};

/// alpha = 1 / Re sigma, gamma = Im sigma / Re sigma, so sigma = (1 + i gamma) / alpha.
ScalingRotation alpha_gamma(const PowerExponent& exponent);

/// The fixed Moebius map i(1 - z)/(1 + z) from the unit disk onto the upper half-plane.
cplx moebius_to_half_plane(cplx z);

class IdentityMap final : public ConformalMap {
 public:
  std::string family() const override { return "identity"; }
  Domain domain() const override { return Domain::UnitDisk; }
  cplx evaluate(cplx z) const override;
  cplx derivative(cplx z) const override;
  std::optional<double> distortion() const override { return 0.0; }
  std::optional<cplx> boundary_value(cplx zeta) const override { return zeta; }
  std::optional<cplx> log_ray_increment(cplx zeta, double log_eps) const override;
  std::optional<double> analytic_gamma(cplx) const override { return 0.0; }
};

/// f(z) = z + a z^2 on the disk, univalent for |a| <= 1/2. a = -1/2 gives f' = 1 - z.
class QuadraticMap final : public ConformalMap {
 public:
  explicit QuadraticMap(cplx a);

  std::string family() const override { return "quadratic"; }
  Domain domain() const override { return Domain::UnitDisk; }
  cplx evaluate(cplx z) const override;
  cplx derivative(cplx z) const override;
  std::optional<cplx> boundary_value(cplx zeta) const override { return evaluate(zeta); }

 private:
  cplx a_;
};

/// g(z) = z^sigma on the closed upper half-plane minus the origin, principal branch.
class HalfPlanePowerMap final : public ConformalMap {
 public:
  explicit HalfPlanePowerMap(cplx sigma) : exponent_(sigma) {}

  const PowerExponent& exponent() const { return exponent_; }
  std::string family() const override { return "half_plane_power"; }
  Domain domain() const override { return Domain::UpperHalfPlane; }
  cplx evaluate(cplx z) const override;
  cplx derivative(cplx z) const override;
  std::optional<double> distortion() const override;

 private:
  PowerExponent exponent_;
};

/// Disk model of the complex power map.
///
/// With s = (1 - z)/(1 + z) and h = s^sigma this is
///
///     f(z) = g0 * 2h / (1 + h),     g0 = i^sigma = exp(i pi sigma / 2),
///
/// i.e. z^sigma precomposed with `moebius_to_half_plane` and postcomposed
/// with the Moebius map u -> 2 g0 u / (g0 + u). The postcomposition fixes 0
/// and g0 and sends the point -g0, which lies in the image of the lower
/// half-plane under the |sigma - 1|-quasiconformal extension, to infinity.
/// The result is bounded, keeps f(0) = i^sigma and f(1) = 0, and its
/// extension is a homeomorphism of the plane fixing infinity.
/// Both z = 1 and z = -1 are boundary singularities with f' ~ (1 -+ z)^(sigma - 1).
class DiskPowerMap final : public ConformalMap {
 public:
  explicit DiskPowerMap(cplx sigma);

  const PowerExponent& exponent() const { return exponent_; }
  std::string family() const override { return "disk_power"; }
  Domain domain() const override { return Domain::UnitDisk; }
  cplx evaluate(cplx z) const override;
  cplx derivative(cplx z) const override;
  std::optional<double> distortion() const override;
  std::optional<cplx> boundary_value(cplx zeta) const override;
  std::optional<cplx> log_ray_increment(cplx zeta, double log_eps) const override;
  std::optional<double> analytic_gamma(cplx zeta) const override;

  /// Exact integral means exponent of this map: max(0, Re((1 - sigma) t) - 1).
  double analytic_beta(cplx t) const;

 private:
  void check_point(cplx z) const;

  PowerExponent exponent_;
  cplx g0_;
};

/// (f(z) - f(0)) / f'(0): the class-S normalization of a disk map.
class NormalizedDiskMap final : public ConformalMap {
 public:
  explicit NormalizedDiskMap(MapPtr base);

  const ConformalMap& base() const { return *base_; }
  std::string family() const override { return base_->family() + "_normalized"; }
  Domain domain() const override { return Domain::UnitDisk; }
  cplx evaluate(cplx z) const override;
  cplx derivative(cplx z) const override;
  std::optional<double> distortion() const override { return base_->distortion(); }
  std::optional<cplx> boundary_value(cplx zeta) const override;
  std::optional<cplx> log_ray_increment(cplx zeta, double log_eps) const override;
  std::optional<double> analytic_gamma(cplx zeta) const override { return base_->analytic_gamma(zeta); }

 private:
  MapPtr base_;
  cplx shift_;
  cplx scale_;
};

/// e^{-i theta} f(e^{i theta} z): the same map viewed in rotated coordinates.
class RotatedMap final : public ConformalMap {
 public:
  RotatedMap(MapPtr base, double theta);

  std::string family() const override { return base_->family() + "_rotated"; }
  Domain domain() const override { return Domain::UnitDisk; }
  cplx evaluate(cplx z) const override;
  cplx derivative(cplx z) const override;
  std::optional<double> distortion() const override { return base_->distortion(); }

 private:
  MapPtr base_;
  cplx rotation_;
};

/// Beltrami coefficient (d-bar f)/(d f) from central differences of step h.
/// Throws DegenerateJacobian if |d f| < 1e-12.
cplx beltrami_fd(const AnalyticFn& f, cplx z, double h);

/// Default finite-difference step 1e-5 * max(1, |z|).
double default_fd_step(cplx z);

/// Branch-continued log f' on the circle |z| = r with n samples (n >= 64),
/// seeded by radial continuation from arg f'(0) in [0, 2pi). Doubles n up to
/// twice if the closure defect exceeds 1e-8, then throws ClosureDefect.
CircleLogs log_derivative_on_circle(const ConformalMap& f, double r, std::size_t n);

/// Samples of a radial-angular grid for pointwise bound checks.
struct PolarGrid {
  std::vector<double> radii;
  std::size_t angles = 64;
};

/// Radii 1 - 2^(-depth * i / count), i = 1..count.
PolarGrid dyadic_polar_grid(std::size_t count, double depth, std::size_t angles);

/// min over the grid of  k log((1 + r)/(1 - r)) - |log(z f'(z)/f(z))|, with the
/// log continued radially from z = 0 where z f'/f = 1. For a normalized map
/// with a k-quasiconformal extension this is nonnegative; k = 1 covers all of
/// class S.
double pointwise_bound_margin(const ConformalMap& normalized, double k, const PolarGrid& grid);

}  // namespace qdisk
