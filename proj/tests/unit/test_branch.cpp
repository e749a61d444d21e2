#include <cmath>

#include "doctest.h"
#include "qdisk/branch.hpp"
#include "qdisk/errors.hpp"
#include "qdisk/random.hpp"

using namespace qdisk;

TEST_CASE("continue_log small rotation") {
  const TrackedLog start{1.0, 0.0};
  const TrackedLog next = continue_log(start, std::polar(1.0, 0.1));
  CHECK(std::abs(next.log_value - cplx(0.0, 0.1)) < 1e-15);
}

TEST_CASE("continue_log stays on the sheet past the negative axis") {
  const TrackedLog at_minus_one{-1.0, cplx(0.0, kPi)};
  const TrackedLog next = continue_log(at_minus_one, std::polar(1.0, kPi + 0.2));
  CHECK(next.log_value.imag() == doctest::Approx(kPi + 0.2).epsilon(1e-14));
}

TEST_CASE("walking twice around the circle winds to 4 pi") {
  TrackedLog current{1.0, 0.0};
  int crossings = 0;
  double previous_im = 0.0;
  const int steps = static_cast<int>(std::ceil(4.0 * kPi / 0.01));
  for (int i = 1; i <= steps; ++i) {
    const double theta = std::min(4.0 * kPi, 0.01 * i);
    const cplx v = std::polar(1.0, theta);
    // Count downward crossings of the negative real axis independently.
    if (previous_im > 0.0 && v.imag() <= 0.0 && v.real() < 0.0) ++crossings;
    previous_im = v.imag();
    current = continue_log(current, v);
  }
  CHECK(crossings == 2);
  CHECK(current.log_value.imag() == doctest::Approx(4.0 * kPi).epsilon(1e-12));
}

TEST_CASE("continue_log errors") {
  const TrackedLog start{1.0, 0.0};
  CHECK_THROWS_AS(continue_log(start, 0.0), Error);
  try {
    continue_log(start, 0.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroValue);
  }
  // A jump of exactly pi is ambiguous between the two neighbouring sheets.
  try {
    continue_log(start, cplx(-1.0, 0.0));
    FAIL("expected AmbiguousBranch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AmbiguousBranch);
  }
}

TEST_CASE("continue_log is idempotent on repeated values") {
  TrackedLog current{cplx(-2.0, 1e-3), cplx(std::log(std::abs(cplx(-2.0, 1e-3))), std::arg(cplx(-2.0, 1e-3)) + kTwoPi)};
  const TrackedLog again = continue_log(current, current.value);
  CHECK(again.log_value == current.log_value);
}

TEST_CASE("tracked_pow examples") {
  CHECK(std::abs(tracked_pow(cplx(0.0, kPi), 0.5) - cplx(0.0, 1.0)) < 1e-15);
  CHECK(tracked_pow(0.0, cplx(3.0, -7.0)) == cplx(1.0));
  const cplx expected = 8.0 * std::polar(1.0, 4.0 * std::log(2.0));
  CHECK(std::abs(tracked_pow(std::log(2.0), cplx(3.0, 4.0)) - expected) < 1e-14 * 8.0);
}

TEST_CASE("tracked_pow overflow is reported") {
  try {
    tracked_pow(1000.0, 1.0);
    FAIL("expected Overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Overflow);
  }
}

TEST_CASE("tracked_pow exponent law") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const cplx log_w(rng.uniform(-2.0, 2.0), rng.uniform(-10.0, 10.0));
    const cplx t1 = rng.in_disk(10.0), t2 = rng.in_disk(10.0);
    const cplx lhs = tracked_pow(log_w, t1 + t2);
    const cplx rhs = tracked_pow(log_w, t1) * tracked_pow(log_w, t2);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
}

TEST_CASE("closed paths return to the starting log") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    // exp(p(z)) never vanishes and has zero winding on every circle.
    const cplx a = rng.in_disk(3.0), b = rng.in_disk(3.0);
    const AnalyticFn fn = [a, b](cplx z) { return std::exp(a * z + b * z * z); };
    const CirclePath path(0.8, 64, 2);
    const CircleLogs logs = log_on_circle(fn, path, radial_seed(fn, 0.8));
    CHECK(logs.closure_defect <= 1e-8);
  }
}

TEST_CASE("circle path refinement keeps angles increasing") {
  const CirclePath path(0.5, 64, 0);
  const CirclePath fine = path.refined();
  CHECK(fine.size() == 128);
  for (std::size_t i = 1; i < fine.size(); ++i) CHECK(fine.angle(i) > fine.angle(i - 1));
  CHECK(fine.angle(2) == path.angle(1));
}
