#include <cmath>

#include "doctest.h"
#include "qdisk/errors.hpp"
#include "qdisk/motion.hpp"
#include "qdisk/nevanlinna_pick.hpp"
#include "qdisk/random.hpp"

using namespace qdisk;

TEST_CASE("identity motion") {
  const WeldedStretch m(0.0, 0.0);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const cplx z = rng.in_disk(5.0);
    CHECK(std::abs(evaluate_motion(m, z) - z) <= 1e-14 * std::abs(z));
  }
}

TEST_CASE("diagonal motion is a radial stretch") {
  const cplx lambda(0.3, 0.2);
  const WeldedStretch m(lambda, lambda);
  CHECK(std::abs(m.sigma() - m.sigma_plus()) < 1e-15);
  const cplx expected = cplx(0.0, 1.0) * std::exp(m.sigma_plus() * std::log(2.0));
  CHECK(std::abs(evaluate_motion(m, cplx(0.0, 2.0)) - expected) < 1e-14);
}

TEST_CASE("exponent identities") {
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const cplx lambda = rng.in_disk(), eta = rng.in_disk();
    const WeldedStretch m(lambda, eta);
    CHECK(m.sigma_plus().real() > 0.0);
    CHECK(m.sigma_minus().real() > 0.0);
    CHECK(std::abs(m.sigma() / m.sigma_plus() + m.sigma() / m.sigma_minus() - 2.0) <= 1e-14 * 4.0);
    const cplx via_mean = 2.0 / ((1.0 - lambda) / (1.0 + lambda) + (1.0 - eta) / (1.0 + eta));
    CHECK(std::abs(via_mean - sigma_of(lambda, eta)) <= 1e-12 * std::abs(via_mean));
    const cplx pick = psi_first({InterpolantKind::First, 1.0}, lambda, eta);
    CHECK(std::abs(pick - sigma_of(lambda, eta)) <= 1e-12 * std::abs(pick));
  }
  CHECK(sigma_of(0.0, 0.0) == cplx(1.0));
  CHECK(std::abs(sigma_of(0.3, 0.0) - 1.3) < 1e-15);
}

TEST_CASE("welding across the real axis") {
  const WeldedStretch m(cplx(0.4, -0.3), cplx(-0.2, 0.5));
  const WeldLimits at_minus_three = weld_limits(m, -3.0);
  CHECK(std::abs(at_minus_three.from_upper - at_minus_three.from_lower) <= 1e-10);
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const WeldedStretch w(rng.in_disk(0.95), rng.in_disk(0.95));
    for (int i = 1; i <= 100; ++i) {
      const double x = 0.05 * i;
      for (const double s : {x, -x}) {
        const WeldLimits l = weld_limits(w, s);
        CHECK(std::abs(l.from_upper - l.from_lower) <= 1e-10 * std::max(1.0, std::abs(l.from_upper)));
      }
    }
  }
}

TEST_CASE("normalization") {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const WeldedStretch m(rng.in_disk(), rng.in_disk());
    CHECK(evaluate_motion(m, 1.0) == cplx(1.0));
    CHECK(evaluate_motion(m, 0.0, true) == cplx(0.0));
    const cplx direction = rng.on_circle();
    const double near = std::abs(evaluate_motion(m, 1e4 * direction));
    const double far = std::abs(evaluate_motion(m, 1e8 * direction));
    CHECK(far / near == doctest::Approx(std::pow(1e4, m.sigma().real())).epsilon(1e-9));
    CHECK(far > near);
  }
  try {
    evaluate_motion(WeldedStretch(0.1, 0.1), 0.0);
    FAIL("expected OriginSingularity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OriginSingularity);
  }
  CHECK_THROWS_AS(WeldedStretch(1.0, 0.0), Error);
}

TEST_CASE("Beltrami coefficient by finite differences") {
  CHECK(std::abs(motion_beltrami_check(WeldedStretch(0.0, 0.0), cplx(0.0, 1.0), 1e-5).estimate) < 1e-9);
  const BeltramiCheck a = motion_beltrami_check(WeldedStretch(0.4, 0.0), cplx(0.0, 1.0), 1e-5);
  CHECK(std::abs(a.estimate - cplx(-0.4)) < 1e-3);
  const BeltramiCheck b = motion_beltrami_check(WeldedStretch(0.3, 0.3), std::polar(1.0, kPi / 4.0), 1e-5);
  CHECK(std::abs(std::abs(b.estimate) - 0.3) < 1e-3);
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const WeldedStretch m(rng.in_disk(0.9), rng.in_disk(0.9));
    cplx z = rng.in_disk(3.0);
    if (std::abs(z.imag()) < 0.1) z += cplx(0.0, 0.2);
    CHECK(motion_beltrami_check(m, z, 1e-5).rel_error <= 1e-3);
  }
}

TEST_CASE("motion depends holomorphically on its parameters") {
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    const cplx lambda = rng.in_disk(0.8), eta = rng.in_disk(0.8);
    cplx z = rng.in_disk(3.0);
    if (std::abs(z.imag()) < 0.05) z += cplx(0.0, 0.1);
    CHECK(parameter_cr_residual(lambda, eta, z, 1e-4) <= 1e-6);
  }
}

TEST_CASE("reflection symmetry of the circle realization") {
  Rng rng(7);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const cplx lambda = rng.in_disk(0.9), eta = rng.in_disk(0.9);
    const CircleWeldedMotion f(WeldedStretch(lambda, eta));
    const CircleWeldedMotion g(WeldedStretch(std::conj(eta), std::conj(lambda)));
    const cplx z = rng.in_disk(3.0);
    const cplx lhs = f(z);
    const cplx rhs = 1.0 / std::conj(g(1.0 / std::conj(z)));
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("circle realization fixes 0 and 1") {
  const CircleWeldedMotion f(WeldedStretch(cplx(0.3, 0.1), -0.4));
  CHECK(std::abs(f(0.0)) < 1e-14);
  CHECK(f(1.0) == cplx(1.0));
  CHECK(std::abs(f(1.0 + 1e-9) - 1.0) < 1e-6);
}
