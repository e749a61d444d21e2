#include "qdisk/motion.hpp"

#include <algorithm>
#include <cmath>

#include "qdisk/errors.hpp"
#include "qdisk/maps.hpp"

namespace qdisk {

cplx sigma_of(cplx lambda, cplx eta) {
  if (!(std::abs(lambda) < 1.0 && std::abs(eta) < 1.0)) {
    throw Error(ErrorCode::DomainError, "motion parameters must lie in the open unit disk");
  }
  return (1.0 + lambda) * (1.0 + eta) / (1.0 - lambda * eta);
}

WeldedStretch::WeldedStretch(cplx lambda, cplx eta)
    : lambda_(lambda),
      eta_(eta),
      sigma_plus_((1.0 + lambda) / (1.0 - lambda)),
      sigma_minus_((1.0 + eta) / (1.0 - eta)),
      sigma_(sigma_of(lambda, eta)) {}

double WeldedStretch::distortion() const { return std::max(std::abs(lambda_), std::abs(eta_)); }

namespace {

cplx upper_formula(const WeldedStretch& m, double arg, double log_modulus) {
  return std::exp(cplx(0.0, 1.0) * (m.sigma() / m.sigma_plus()) * arg + m.sigma() * log_modulus);
}

cplx lower_formula(const WeldedStretch& m, double arg, double log_modulus) {
  return std::exp(cplx(0.0, 1.0) * (m.sigma() / m.sigma_minus()) * arg + m.sigma() * log_modulus);
}

}  // namespace

cplx evaluate_motion(const WeldedStretch& m, cplx z, bool origin_is_zero) {
  if (z == cplx(0.0)) {
    if (origin_is_zero) return 0.0;
    throw Error(ErrorCode::OriginSingularity, "welded motion evaluated at the origin");
  }
  const double log_modulus = std::log(std::abs(z));
  if (z.imag() >= 0.0) {
    double arg = std::arg(z);
    if (arg < 0.0) arg += kTwoPi;  // -0.0 imaginary part on the negative axis
    return upper_formula(m, arg, log_modulus);
  }
  return lower_formula(m, std::arg(z), log_modulus);
}

WeldLimits weld_limits(const WeldedStretch& m, double x) {
  if (x == 0.0) throw Error(ErrorCode::OriginSingularity, "weld limits at the origin");
  const double log_modulus = std::log(std::abs(x));
  if (x > 0.0) return {upper_formula(m, 0.0, log_modulus), lower_formula(m, 0.0, log_modulus)};
  return {upper_formula(m, kPi, log_modulus), lower_formula(m, -kPi, log_modulus)};
}

cplx motion_beltrami(const WeldedStretch& m, cplx z) {
  if (z.imag() == 0.0) throw Error(ErrorCode::DomainError, "Beltrami coefficient is taken off the real axis");
  const auto mu = [](cplx w) { return w / std::conj(w); };
  if (z.imag() > 0.0) return m.lambda() * mu(z);
  return m.eta() * std::conj(mu(std::conj(z)));
}

BeltramiCheck motion_beltrami_check(const WeldedStretch& m, cplx z, double h) {
  const cplx expected = motion_beltrami(m, z);
  const cplx estimate = beltrami_fd([&m](cplx w) { return evaluate_motion(m, w); }, z, h);
  const double abs_error = std::abs(estimate - expected);
  const double scale = std::abs(expected);
  return {estimate, expected, abs_error, scale > 0.0 ? abs_error / scale : abs_error};
}

double parameter_cr_residual(cplx lambda, cplx eta, cplx z, double step) {
  const auto f = [z](cplx l, cplx e) { return evaluate_motion(WeldedStretch(l, e), z); };
  const cplx i(0.0, 1.0);
  const double scale = std::max(1.0, std::abs(f(lambda, eta)));

  // Fourth-order central difference of g at 0 in direction d.
  const auto diff = [step](const auto& g, cplx d) {
    return (-g(2.0 * step * d) + 8.0 * g(step * d) - 8.0 * g(-step * d) + g(-2.0 * step * d)) / (12.0 * step);
  };
  const auto along_lambda = [&](cplx h) { return f(lambda + h, eta); };
  const auto along_eta = [&](cplx h) { return f(lambda, eta + h); };
  // d/d(conj w) = (d/dx + i d/dy) / 2
  const cplx dl = 0.5 * (diff(along_lambda, 1.0) + i * diff(along_lambda, i));
  const cplx de = 0.5 * (diff(along_eta, 1.0) + i * diff(along_eta, i));
  return std::max(std::abs(dl), std::abs(de)) / scale;
}

namespace {

cplx to_line(cplx z) { return cplx(0.0, 1.0) * (z + 1.0) / (z - 1.0); }
cplx from_line(cplx w) { return (w + cplx(0.0, 1.0)) / (w - cplx(0.0, 1.0)); }

}  // namespace

CircleWeldedMotion::CircleWeldedMotion(const WeldedStretch& m) : motion_(m) {
  a_ = from_line(evaluate_motion(m, cplx(0.0, -1.0)));  // image of z = 0
  b_ = from_line(evaluate_motion(m, cplx(0.0, 1.0)));   // image of z = infinity
  scale_ = (1.0 - b_) / (1.0 - a_);
}

cplx CircleWeldedMotion::conjugated(cplx z) const {
  return from_line(evaluate_motion(motion_, to_line(z), true));
}

cplx CircleWeldedMotion::operator()(cplx z) const {
  if (z == cplx(1.0)) return 1.0;
  const cplx g = conjugated(z);
  return (g - a_) / (g - b_) * scale_;
}

}  // namespace qdisk
