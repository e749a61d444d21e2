#include <cmath>
#include <memory>

#include "doctest.h"
#include "qdisk/errors.hpp"
#include "qdisk/maps.hpp"
#include "qdisk/random.hpp"

using namespace qdisk;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

cplx central_difference(const ConformalMap& f, cplx z, double h) {
  return (f.evaluate(z + h) - f.evaluate(z - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("half-plane power map values") {
  CHECK(HalfPlanePowerMap(1.0).evaluate(cplx(2.0, 1.0)) == cplx(2.0, 1.0));
  CHECK(std::abs(HalfPlanePowerMap(2.0).evaluate(cplx(0.0, 1.0)) - cplx(-1.0, 0.0)) < 1e-15);
  CHECK(std::abs(HalfPlanePowerMap(1.0).derivative(cplx(0.3, 2.0)) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(HalfPlanePowerMap(2.0).derivative(cplx(0.0, 1.0)) - cplx(0.0, 2.0)) < 1e-15);
  CHECK(code_of([] { HalfPlanePowerMap(0.5).evaluate(0.0); }) == ErrorCode::SingularPoint);
  CHECK(code_of([] { HalfPlanePowerMap(0.5).evaluate(cplx(1.0, -1.0)); }) == ErrorCode::DomainError);
}

TEST_CASE("disk power map at the origin") {
  const DiskPowerMap f(0.5);
  CHECK(std::abs(f.evaluate(0.0) - std::polar(1.0, kPi / 4.0)) < 1e-15);
  const cplx fd = central_difference(f, 0.0, 1e-5);
  CHECK(std::abs(f.derivative(0.0) - fd) < 1e-8);
  CHECK(code_of([] { DiskPowerMap(0.5).evaluate(1.0); }) == ErrorCode::SingularPoint);
  CHECK(code_of([] { DiskPowerMap(0.5).evaluate(cplx(1.0, 1.0)); }) == ErrorCode::DomainError);
}

TEST_CASE("admissible exponents") {
  CHECK(code_of([] { DiskPowerMap(cplx(2.5, 0.0)); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { DiskPowerMap(0.0); }) == ErrorCode::InvalidArgument);
  CHECK(distortion_k(PowerExponent(1.0)) == 0.0);
  CHECK(distortion_k(PowerExponent(0.5)) == 0.5);
  CHECK(distortion_k(PowerExponent(cplx(0.5, 0.5))) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(code_of([] { distortion_k(PowerExponent(2.0)); }) == ErrorCode::NotExtendable);
}

TEST_CASE("alpha and gamma") {
  const auto one = alpha_gamma(PowerExponent(1.0));
  CHECK(one.alpha == 1.0);
  CHECK(one.gamma == 0.0);
  const auto half = alpha_gamma(PowerExponent(0.5));
  CHECK(half.alpha == 2.0);
  CHECK(half.gamma == 0.0);
  const auto twist = alpha_gamma(PowerExponent(cplx(0.5, 0.5)));
  CHECK(twist.alpha == 2.0);
  CHECK(twist.gamma == 1.0);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const cplx sigma = 1.0 + rng.in_disk(0.99);
    const auto ag = alpha_gamma(PowerExponent(sigma));
    CHECK(std::abs(cplx(1.0, ag.gamma) / ag.alpha - sigma) < 1e-13);
  }
}

TEST_CASE("beltrami_fd on simple maps") {
  CHECK(std::abs(beltrami_fd([](cplx z) { return z; }, cplx(0.3, 0.2), 1e-5)) < 1e-12);
  const double k = 0.3;
  const cplx mu = beltrami_fd([k](cplx z) { return z + k * std::conj(z); }, cplx(1.0, 1.0), 1e-5);
  CHECK(std::abs(mu - k) < 1e-9);
  CHECK(code_of([] { beltrami_fd([](cplx) { return cplx(1.0); }, 0.0, 1e-5); }) == ErrorCode::DegenerateJacobian);
}

TEST_CASE("normalized disk map") {
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    const cplx sigma = 1.0 + rng.in_disk(0.95);
    const NormalizedDiskMap f(std::make_shared<DiskPowerMap>(sigma));
    CHECK(f.evaluate(0.0) == cplx(0.0));
    CHECK(f.derivative(0.0) == cplx(1.0));
  }
}

TEST_CASE("derivatives match finite differences") {
  Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    const cplx sigma = 1.0 + rng.in_disk(0.95);
    const DiskPowerMap f(sigma);
    const cplx z = rng.in_disk(0.8);
    const cplx fd = central_difference(f, z, 1e-5);
    CHECK(std::abs(f.derivative(z) - fd) <= 1e-7 * std::abs(fd));

    const HalfPlanePowerMap g(sigma);
    const cplx w(rng.uniform(-2.0, 2.0), rng.uniform(0.2, 2.0));
    const cplx gd = central_difference(g, w, 1e-5);
    CHECK(std::abs(g.derivative(w) - gd) <= 1e-7 * std::abs(gd));
  }
}

TEST_CASE("disk power map is injective on random pairs") {
  Rng rng(17);
  const cplx sigmas[] = {0.5, cplx(0.5, 0.5), cplx(1.0, 0.8), 1.9, cplx(1.6, -0.6)};
  for (const cplx sigma : sigmas) {
    const DiskPowerMap f(sigma);
    int collisions = 0;
    for (int i = 0; i < 10000; ++i) {
      const cplx z1 = rng.in_disk(0.999), z2 = rng.in_disk(0.999);
      if (std::abs(f.evaluate(z1) - f.evaluate(z2)) <= 1e-12 * 2.0) ++collisions;
    }
    CHECK(collisions == 0);
  }
}

TEST_CASE("pointwise bounds for normalized maps") {
  const PolarGrid grid = dyadic_polar_grid(16, 10.0, 48);
  Rng rng(4);
  for (int i = 0; i < 12; ++i) {
    const cplx sigma = 1.0 + rng.in_disk(0.9);
    const NormalizedDiskMap f(std::make_shared<DiskPowerMap>(sigma));
    // Class S bound, then the sharper bound using the extension's distortion.
    CHECK(pointwise_bound_margin(f, 1.0, grid) >= -1e-9);
    CHECK(pointwise_bound_margin(f, std::abs(sigma - 1.0), grid) >= -1e-9);
  }
}

TEST_CASE("log f' on circles") {
  const IdentityMap id;
  const CircleLogs logs = log_derivative_on_circle(id, 0.7, 64);
  CHECK(logs.closure_defect == 0.0);
  for (const TrackedLog& l : logs.logs) CHECK(l.log_value == cplx(0.0));

  const QuadraticMap q(-0.5);  // f' = 1 - z
  const CircleLogs ql = log_derivative_on_circle(q, 0.9, 256);
  CHECK(ql.closure_defect == doctest::Approx(0.0).epsilon(1e-14));
  for (std::size_t i = 0; i < ql.logs.size(); ++i) {
    const cplx expected = std::log(1.0 - ql.path.point(i));
    CHECK(std::abs(ql.logs[i].log_value - expected) < 1e-13);
    CHECK(std::abs(ql.logs[i].log_value.imag()) < 0.5 * kPi);
  }

  const DiskPowerMap f(0.5);
  const CircleLogs fl = log_derivative_on_circle(f, 0.99, 1u << 14);
  CHECK(fl.closure_defect <= 1e-8);
}

TEST_CASE("rotated map has the same derivative modulus pattern") {
  auto base = std::make_shared<DiskPowerMap>(cplx(0.7, 0.3));
  const RotatedMap rotated(base, 0.4);
  const cplx z(0.2, -0.5);
  CHECK(std::abs(rotated.derivative(z) - base->derivative(std::polar(1.0, 0.4) * z)) < 1e-14);
}
