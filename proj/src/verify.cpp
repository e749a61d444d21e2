#include "qdisk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>

#include "qdisk/errors.hpp"
#include "qdisk/format.hpp"
#include "qdisk/integral_means.hpp"
#include "qdisk/nevanlinna_pick.hpp"
#include "qdisk/parallel.hpp"
#include "qdisk/random.hpp"
#include "qdisk/twisting.hpp"

namespace qdisk {

namespace {

using Check = std::function<InvariantResult(std::uint64_t)>;

struct NamedCheck {
  const char* module;
  const char* name;
  Check run;
};

// splitmix64 step: decorrelates the per-invariant seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

InvariantResult result(bool passed, std::string detail) { return {"", "", passed, std::move(detail)}; }

std::string worst(const char* label, double value) { return std::string(label) + " = " + format_double(value); }

// Admissible exponents with Re sigma >= 1/2 and |sigma - 1| <= 0.75, where
// the growth of log(f/z) is visible within the dyadic grid.
std::vector<cplx> moderate_exponents(Rng& rng, std::size_t count) {
  std::vector<cplx> out;
  while (out.size() < count) {
    const cplx sigma = 1.0 + rng.in_disk(0.75);
    if (sigma.real() >= 0.5) out.push_back(sigma);
  }
  return out;
}

std::vector<NamedCheck> map_checks() {
  return {
      {"map_families", "injectivity",
       [](std::uint64_t seed) {
         Rng rng(seed);
         int collisions = 0;
         for (const cplx sigma : {cplx(0.5), cplx(0.5, 0.5), cplx(1.0, 0.8), cplx(1.9), cplx(1.6, -0.6)}) {
           const DiskPowerMap f(sigma);
           for (int i = 0; i < 10000; ++i) {
             const cplx z1 = rng.in_disk(0.999), z2 = rng.in_disk(0.999);
             if (std::abs(f.evaluate(z1) - f.evaluate(z2)) <= 2e-12) ++collisions;
           }
         }
         return result(collisions == 0, "collisions = " + std::to_string(collisions));
       }},
      {"map_families", "derivative_matches_finite_differences",
       [](std::uint64_t seed) {
         Rng rng(seed);
         double err = 0.0;
         for (int i = 0; i < 300; ++i) {
           const DiskPowerMap f(1.0 + rng.in_disk(0.95));
           const cplx z = rng.in_disk(0.8);
           const double h = 1e-5;
           const cplx fd = (f.evaluate(z + h) - f.evaluate(z - h)) / (2.0 * h);
           err = std::max(err, std::abs(f.derivative(z) - fd) / std::abs(fd));
         }
         return result(err <= 1e-7, worst("max relative error", err));
       }},
      {"map_families", "alpha_gamma_roundtrip",
       [](std::uint64_t seed) {
         Rng rng(seed);
         double err = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const cplx sigma = 1.0 + rng.in_disk(0.999);
           const auto ag = alpha_gamma(PowerExponent(sigma));
           err = std::max(err, std::abs(cplx(1.0, ag.gamma) / ag.alpha - sigma));
         }
         return result(err <= 1e-12, worst("max error", err));
       }},
      {"map_families", "class_s_pointwise_bound",
       [](std::uint64_t seed) {
         Rng rng(seed);
         const PolarGrid grid = dyadic_polar_grid(16, 10.0, 48);
         double margin = 1e300;
         for (int i = 0; i < 10; ++i) {
           const NormalizedDiskMap f(std::make_shared<DiskPowerMap>(1.0 + rng.in_disk(0.9)));
           margin = std::min(margin, pointwise_bound_margin(f, 1.0, grid));
         }
         return result(margin >= -1e-9, worst("min margin", margin));
       }},
      {"map_families", "quasiconformal_pointwise_bound",
       [](std::uint64_t seed) {
         Rng rng(seed);
         const PolarGrid grid = dyadic_polar_grid(16, 10.0, 48);
         double margin = 1e300;
         for (int i = 0; i < 10; ++i) {
           const cplx sigma = 1.0 + rng.in_disk(0.9);
           const NormalizedDiskMap f(std::make_shared<DiskPowerMap>(sigma));
           margin = std::min(margin, pointwise_bound_margin(f, std::abs(sigma - 1.0), grid));
         }
         return result(margin >= -1e-9, worst("min margin", margin));
       }},
      {"map_families", "beltrami_of_affine_map",
       [](std::uint64_t seed) {
         Rng rng(seed);
         double err = 0.0;
         for (int i = 0; i < 100; ++i) {
           const cplx k = rng.in_disk(0.9);
           const cplx z = rng.in_disk(3.0);
           const cplx mu = beltrami_fd([k](cplx w) { return w + k * std::conj(w); }, z, default_fd_step(z));
           err = std::max(err, std::abs(mu - k));
         }
         return result(err <= 1e-8, worst("max error", err));
       }},
      {"map_families", "inadmissible_exponent_rejected",
       [](std::uint64_t) {
         try {
           DiskPowerMap f(cplx(2.2, 0.1));
         } catch (const Error& e) {
           return result(e.code() == ErrorCode::InvalidArgument, e.what());
         }
         return result(false, "|sigma - 1| > 1 was accepted");
       }},
  };
}

std::vector<NamedCheck> region_checks() {
  return {
      {"nevanlinna_pick", "reciprocal_second_disk",
       [](std::uint64_t seed) {
         const double k = 0.5;
         const RegionWk region(k);
         Rng rng(seed);
         int mismatches = 0;
         for (int i = 0; i < 10000; ++i) {
           const cplx w(rng.uniform(0.0, 3.0), rng.uniform(-1.5, 1.5));
           const double a = std::abs(w - region.center2()) - region.radius2();
           const double b = std::abs(1.0 / w - 1.0) - k;
           if (std::abs(a) < 1e-12 || std::abs(b) < 1e-12) continue;
           if ((a <= 0.0) != (b <= 0.0)) ++mismatches;
         }
         return result(mismatches == 0, "mismatches = " + std::to_string(mismatches));
       }},
      {"nevanlinna_pick", "first_interpolant_c_1",
       [](std::uint64_t seed) {
         const auto r = verify_interpolant({InterpolantKind::First, 1.0}, 0.5, 100000, seed);
         return result(r.passed(), "failures = " + std::to_string(r.failures.size()));
       }},
      {"nevanlinna_pick", "second_interpolant_c_minus_i",
       [](std::uint64_t seed) {
         const auto r = verify_interpolant({InterpolantKind::Second, cplx(0.0, -1.0)}, 0.5, 100000, seed);
         return result(r.passed(), "failures = " + std::to_string(r.failures.size()));
       }},
      {"nevanlinna_pick", "achievable_values_in_region",
       [](std::uint64_t seed) {
         Rng rng(seed);
         int violations = 0;
         for (int i = 0; i < 100000; ++i) {
           const cplx lambda0 = rng.in_disk(0.999);
           if (std::abs(lambda0) < 1e-6) continue;
           const InterpolantSpec spec(i % 2 ? InterpolantKind::First : InterpolantKind::Second, rng.in_disk());
           if (!contains(psi(spec, lambda0, 0.0), std::abs(lambda0))) ++violations;
         }
         return result(violations == 0, "violations = " + std::to_string(violations));
       }},
      {"nevanlinna_pick", "boundary_inside_cone",
       [](std::uint64_t) {
         int failures = 0;
         for (const double k : {0.1, 0.5, 0.9}) {
           for (const cplx w : boundary_polyline(k, 256)) failures += cone_check(w, k) ? 0 : 1;
         }
         return result(failures == 0, "failures = " + std::to_string(failures));
       }},
      {"nevanlinna_pick", "boundary_vertices_on_region",
       [](std::uint64_t) {
         int failures = 0;
         for (const double k : {0.1, 0.5, 0.9}) {
           const RegionWk region(k);
           for (const BoundarySample& s : boundary_samples(k, 256)) {
             if (region.hull_gap(s.point) > 1e-10) ++failures;
             if (region.contains(s.point + 1e-6 * s.outward_normal)) ++failures;
           }
         }
         return result(failures == 0, "failures = " + std::to_string(failures));
       }},
      {"nevanlinna_pick", "hull_coverage",
       [](std::uint64_t seed) {
         const double d = coverage_distance(0.5, achievable_points(0.5, 100000, seed), 0.01);
         return result(d <= 0.02, worst("distance", d));
       }},
      {"nevanlinna_pick", "rotation_invariance",
       [](std::uint64_t seed) {
         Rng rng(seed);
         double err = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const cplx c = rng.in_disk();
           const cplx rot = rng.on_circle();
           const cplx lambda = rng.in_disk(), eta = rng.in_disk();
           const cplx lhs = psi_first({InterpolantKind::First, c}, rot * lambda, std::conj(rot) * eta);
           const cplx rhs = psi_first({InterpolantKind::First, c * rot}, lambda, eta);
           err = std::max(err, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
         }
         return result(err <= 1e-12, worst("max error", err));
       }},
      {"nevanlinna_pick", "tangent_support_sweep",
       [](std::uint64_t) {
         int passed = 0, total = 0;
         std::string detail;
         for (const double modulus : {1.0, 2.0, 4.0, 8.0}) {
           // |t| = 1 would need lam_abs = 1; use the nearest admissible pair.
           const double lam = modulus == 1.0 ? 1.0 - 1e-3 : 1.0 / modulus;
           const double m = 1.0 / lam;
           const double spread = std::acos(std::min(1.0, 1.0 / m));
           for (int p = -2; p <= 2; ++p) {
             const cplx t = std::polar(m, spread * p / 2.0);
             if (t.real() < 1.0) continue;
             ++total;
             try {
               tangent_support(t, lam);
               ++passed;
             } catch (const Error& e) {
               if (detail.empty()) detail = e.what();
             }
           }
         }
         return result(passed == total, std::to_string(passed) + "/" + std::to_string(total) + " pass" +
                                            (detail.empty() ? "" : "; " + detail));
       }},
      {"nevanlinna_pick", "two_point_segment",
       [](std::uint64_t) {
         bool ok = true;
         for (const double k : {0.2, 0.5, 0.8}) {
           const auto seg = two_point_segment(k);
           ok = ok && seg.first == 1.0 - k * k && seg.second == 1.0;
           const RegionWk region(k);
           const double slope = std::tan(std::asin(k));
           ok = ok && region.hull_gap(cplx(seg.first, seg.first * slope)) <= 1e-12;
           ok = ok && region.hull_gap(cplx(seg.second, seg.second * slope)) <= 1e-12;
         }
         return result(ok, "endpoints (1 - k^2, 1) for k = 0.2, 0.5, 0.8");
       }},
  };
}

std::vector<NamedCheck> motion_checks() {
  return {
      {"motion_weld", "exponent_identities",
       [](std::uint64_t seed) {
         Rng rng(seed);
         double err = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const WeldedStretch m(rng.in_disk(), rng.in_disk());
           err = std::max(err, std::abs(m.sigma() / m.sigma_plus() + m.sigma() / m.sigma_minus() - 2.0));
           const cplx l = rng.in_disk();
           const WeldedStretch diagonal(l, l);
           err = std::max(err, std::abs(diagonal.sigma() - diagonal.sigma_plus()) / std::abs(diagonal.sigma()));
         }
         return result(err <= 1e-13, worst("max error", err));
       }},
      {"motion_weld", "sigma_equals_first_interpolant",
       [](std::uint64_t seed) {
         Rng rng(seed);
         double err = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const cplx l = rng.in_disk(), e = rng.in_disk();
           const cplx s = sigma_of(l, e);
           err = std::max(err, std::abs(s - psi_first({InterpolantKind::First, 1.0}, l, e)) / std::abs(s));
         }
         return result(err <= 1e-12, worst("max relative error", err));
       }},
      {"motion_weld", "weld_continuity",
       [](std::uint64_t seed) {
         Rng rng(seed);
         double err = 0.0;
         for (int trial = 0; trial < 10; ++trial) {
           const WeldedStretch m(rng.in_disk(0.95), rng.in_disk(0.95));
           for (int i = 1; i <= 100; ++i) {
             for (const double x : {0.05 * i, -0.05 * i}) {
               const WeldLimits lim = weld_limits(m, x);
               err = std::max(err, std::abs(lim.from_upper - lim.from_lower) / std::max(1.0, std::abs(lim.from_upper)));
             }
           }
         }
         return result(err <= 1e-10, worst("max gap", err));
       }},
      {"motion_weld", "beltrami_coefficient",
       [](std::uint64_t seed) {
         Rng rng(seed);
         double err = 0.0;
         for (int i = 0; i < 20; ++i) {
           const WeldedStretch m(rng.in_disk(0.9), rng.in_disk(0.9));
           cplx z = rng.in_disk(3.0);
           if (std::abs(z.imag()) < 0.1) z += cplx(0.0, 0.2);
           err = std::max(err, motion_beltrami_check(m, z, 1e-5).rel_error);
         }
         return result(err <= 1e-3, worst("max relative error", err));
       }},
      {"motion_weld", "normalization",
       [](std::uint64_t seed) {
         Rng rng(seed);
         bool ok = true;
         for (int i = 0; i < 100; ++i) {
           const WeldedStretch m(rng.in_disk(), rng.in_disk());
           ok = ok && evaluate_motion(m, 1.0) == cplx(1.0) && evaluate_motion(m, 0.0, true) == cplx(0.0);
           const cplx d = rng.on_circle();
           ok = ok && std::abs(evaluate_motion(m, 1e8 * d)) > std::abs(evaluate_motion(m, 1e4 * d));
         }
         return result(ok, "f(0) = 0, f(1) = 1, |f| increasing along rays");
       }},
      {"motion_weld", "parameter_holomorphy",
       [](std::uint64_t seed) {
         Rng rng(seed);
         double err = 0.0;
         for (int i = 0; i < 50; ++i) {
           cplx z = rng.in_disk(3.0);
           if (std::abs(z.imag()) < 0.05) z += cplx(0.0, 0.1);
           err = std::max(err, parameter_cr_residual(rng.in_disk(0.8), rng.in_disk(0.8), z, 1e-4));
         }
         return result(err <= 1e-6, worst("max residual", err));
       }},
      {"motion_weld", "reflection_symmetry",
       [](std::uint64_t seed) {
         Rng rng(seed);
         double err = 0.0;
         for (int i = 0; i < 1000; ++i) {
           const cplx l = rng.in_disk(0.9), e = rng.in_disk(0.9);
           const CircleWeldedMotion f(WeldedStretch(l, e));
           const CircleWeldedMotion g(WeldedStretch(std::conj(e), std::conj(l)));
           const cplx z = rng.in_disk(3.0);
           const cplx lhs = f(z);
           err = std::max(err, std::abs(lhs - 1.0 / std::conj(g(1.0 / std::conj(z)))) / std::abs(lhs));
         }
         return result(err <= 1e-10, worst("max relative error", err));
       }},
  };
}

std::vector<NamedCheck> twisting_checks() {
  return {
      {"twisting", "beurling_on_exponent_grid",
       [](std::uint64_t) {
         bool ok = true;
         for (int a = 0; a < 36; ++a) {
           for (const double radius : {0.1, 0.4, 0.7, 0.95, 1.0}) {
             const cplx sigma = 1.0 + std::polar(radius, kTwoPi * a / 36.0);
             if (std::abs(sigma) < 0.05) continue;
             const auto ag = alpha_gamma(PowerExponent(sigma));
             const double gap = beurling_gap(ag.alpha, ag.gamma);
             ok = ok && beurling_check(ag.alpha, ag.gamma);
             ok = ok && (radius == 1.0 ? std::abs(gap) <= 1e-9 * ag.alpha : gap > 1e-6);
           }
         }
         return result(ok, "strict inside |sigma - 1| < 1, equality on the rim");
       }},
      {"twisting", "spiral_exponent_grid",
       [](std::uint64_t) {
         double err = 0.0;
         for (int a = 0; a < 12; ++a) {
           for (const double radius : {0.3, 0.6, 0.9}) {
             const cplx sigma = 1.0 + std::polar(radius, kTwoPi * a / 12.0);
             const TwistReport r = spiral_exponent(DiskPowerMap(sigma), 1.0, 4096);
             err = std::max(err, std::abs(r.gamma_hat - sigma.imag() / sigma.real()));
           }
         }
         return result(err <= 0.02, worst("max error", err));
       }},
      {"twisting", "dim_bound_monotone",
       [](std::uint64_t) {
         bool ok = true;
         for (const double k : {0.1, 0.3, 0.5, 0.8, 0.95}) {
           ok = ok && dim_bound(k, 0.0) == 2.0 && dim_bound(k, gamma_max(k)) == 0.0;
           double previous = 2.0;
           for (int i = 0; i <= 100; ++i) {
             const double d = dim_bound(k, 0.05 * i);
             ok = ok && d <= previous;
             previous = d;
           }
         }
         return result(ok, "nonincreasing in |gamma|, 2 at 0, 0 at gamma_max");
       }},
      {"twisting", "distortion_pointwise_margin",
       [](std::uint64_t seed) {
         Rng rng(seed);
         const PolarGrid grid = dyadic_polar_grid(32, 12.0, 64);
         double margin = 1e300;
         for (const cplx sigma : moderate_exponents(rng, 10)) {
           const NormalizedDiskMap f(std::make_shared<DiskPowerMap>(sigma));
           margin = std::min(margin, pointwise_bound_margin(f, std::abs(sigma - 1.0), grid));
         }
         return result(margin >= -1e-9, worst("min margin", margin));
       }},
      {"twisting", "log_f_over_z_bounded",
       [](std::uint64_t seed) {
         Rng rng(seed);
         const PolarGrid grid = dyadic_polar_grid(32, 12.0, 64);
         double slope = -1e300;
         for (const cplx sigma : moderate_exponents(rng, 10)) {
           const NormalizedDiskMap f(std::make_shared<DiskPowerMap>(sigma));
           slope = std::max(slope, log_f_over_z_bound(f, grid).slope);
         }
         return result(slope <= kLogGrowthSlopeBound, worst("max slope", slope));
       }},
  };
}

}  // namespace

std::vector<InvariantResult> run_invariant_suite(const VerifyOptions& options) {
  std::vector<NamedCheck> checks;
  for (auto group : {map_checks(), region_checks(), motion_checks(), twisting_checks()}) {
    checks.insert(checks.end(), group.begin(), group.end());
  }
  return parallel_map<InvariantResult>(checks.size(), options.jobs, [&](std::size_t i) {
    InvariantResult r;
    try {
      r = checks[i].run(derive_seed(options.seed, i));
    } catch (const Error& e) {
      r = result(false, e.what());
    }
    r.module = checks[i].module;
    r.name = checks[i].name;
    return r;
  });
}

std::vector<InvariantResult> check_disk_map(const ConformalMap& f, std::uint64_t seed) {
  std::vector<InvariantResult> out;
  Rng rng(seed);
  double err = 0.0;
  for (int i = 0; i < 200; ++i) {
    const cplx z = rng.in_disk(0.8);
    const double h = 1e-5;
    const cplx fd = (f.evaluate(z + h) - f.evaluate(z - h)) / (2.0 * h);
    err = std::max(err, std::abs(f.derivative(z) - fd) / std::abs(fd));
  }
  out.push_back({"config", "derivative_matches_finite_differences", err <= 1e-7, worst("max relative error", err)});

  if (f.evaluate(0.0) == cplx(0.0) && f.derivative(0.0) == cplx(1.0)) {
    const PolarGrid grid = dyadic_polar_grid(32, 12.0, 64);
    const double m1 = pointwise_bound_margin(f, 1.0, grid);
    out.push_back({"config", "class_s_pointwise_bound", m1 >= -1e-9, worst("min margin", m1)});
    if (const auto k = f.distortion()) {
      const double mk = pointwise_bound_margin(f, *k, grid);
      out.push_back({"config", "quasiconformal_pointwise_bound", mk >= -1e-9, worst("min margin", mk)});
    }
  }
  return out;
}

std::vector<InvariantResult> check_motion(const WeldedStretch& m, std::uint64_t seed) {
  std::vector<InvariantResult> out;
  double gap = 0.0;
  for (int i = 1; i <= 100; ++i) {
    for (const double x : {0.05 * i, -0.05 * i}) {
      const WeldLimits lim = weld_limits(m, x);
      gap = std::max(gap, std::abs(lim.from_upper - lim.from_lower) / std::max(1.0, std::abs(lim.from_upper)));
    }
  }
  out.push_back({"config", "weld_continuity", gap <= 1e-10, worst("max gap", gap)});

  Rng rng(seed);
  double err = 0.0;
  for (int i = 0; i < 20; ++i) {
    cplx z = rng.in_disk(3.0);
    if (std::abs(z.imag()) < 0.1) z += cplx(0.0, 0.2);
    err = std::max(err, motion_beltrami_check(m, z, 1e-5).rel_error);
  }
  out.push_back({"config", "beltrami_coefficient", err <= 1e-3, worst("max relative error", err)});
  return out;
}

}  // namespace qdisk
