#include <doctest.h>

#include <cmath>
#include <random>

#include "nudge2d/errors.hpp"
#include "nudge2d/observation.hpp"
#include "nudge2d/spectral_ops.hpp"
#include "nudge2d/transforms.hpp"
#include "test_support.hpp"

using namespace nudge2d;
using nudge2d::testing::max_abs_difference;
using nudge2d::testing::random_physical;
using nudge2d::testing::sample_physical;

TEST_CASE("static masks") {
  const Grid g512(512);
  CHECK(mask_at(SubdomainSpec::full(), g512, 0.0).fraction() == 1.0);
  const double f1 = mask_at(named_subdomain("omega1"), g512, 0.0).fraction();
  CHECK(std::abs(f1 - 0.7656) <= 1.0 / 512);
  CHECK(mask_at(named_subdomain("omega2"), g512, 0.0).fraction() == doctest::Approx(0.6602).epsilon(2.0 / 512));
  CHECK(mask_at(named_subdomain("omega3"), g512, 0.0).fraction() == doctest::Approx(0.5265).epsilon(2.0 / 512));
  const double f4 = mask_at(named_subdomain("omega4"), g512, 0.0).fraction();
  CHECK(std::abs(f4 - 0.25) <= 1.0 / 512);

  const Grid g128(128);
  CHECK(mask_at(named_subdomain("omega1"), g128, 0.0).count() == 112u * 112u);
  CHECK(mask_at(named_subdomain("omega4"), g128, 0.0).count() == 64u * 64u);
  CHECK_THROWS_AS(named_subdomain("omega9"), ConfigError);
  CHECK_THROWS_AS(SubdomainSpec::square(1.5).validate(), ContractError);
}

TEST_CASE("disk mask") {
  const Grid g(128);
  const Mask m = mask_at(SubdomainSpec::disk(1.0), g, 0.0);
  CHECK(m.fraction() == doctest::Approx(std::numbers::pi / (4 * std::numbers::pi * std::numbers::pi)).epsilon(0.05));
}

TEST_CASE("quarter trajectory") {
  const int n = 128;
  auto eq = [](std::pair<double, double> p, double x, double y) {
    return std::abs(p.first - x) < 1e-12 && std::abs(p.second - y) < 1e-12;
  };
  CHECK(eq(trajectory_quarter(0.0, n), 0, 0));
  CHECK(eq(trajectory_quarter(0.25, n), n / 2, 0));
  CHECK(eq(trajectory_quarter(0.5, n), n / 2, n / 2));
  CHECK(eq(trajectory_quarter(0.75, n), 0, n / 2));
  for (double t : {0.1, 0.33, 0.8}) {
    const auto a = trajectory_quarter(t, n), b = trajectory_quarter(t + 1.0, n);
    CHECK(eq(a, b.first, b.second));
  }
}

TEST_CASE("sixteenth trajectory") {
  const int n = 128;
  const auto t0 = trajectory_sixteenth(0.0, n);
  CHECK(t0.first == 0.0);
  CHECK(t0.second == 0.0);
  const auto below = trajectory_sixteenth(0.25 - 1e-9, n);
  CHECK(below.first == doctest::Approx(3.0 * n / 4).epsilon(1e-6));
  CHECK(below.second == 0.0);
  const auto above = trajectory_sixteenth(0.25 + 1e-9, n);
  CHECK(above.first == doctest::Approx(3.0 * n / 4).epsilon(1e-6));
  CHECK(above.second == n / 4.0);
  CHECK(trajectory_sixteenth(0.25 - 1e-9, n).first == 3.0 * n / 4);
  CHECK(trajectory_sixteenth(0.0625, n).first == n / 4.0);
  CHECK(trajectory_sixteenth(0.3125, n).first == n / 2.0);
  const auto a = trajectory_sixteenth(0.6, n), b = trajectory_sixteenth(1.6, n);
  CHECK(a.first == doctest::Approx(b.first));
  CHECK(a.second == b.second);
}

TEST_CASE("mobile masks cover the grid and have the right size") {
  const Grid g(64);
  for (auto spec : {SubdomainSpec::mobile_quarter(), SubdomainSpec::mobile_sixteenth()}) {
    Mask cover(g);
    for (int j = 0; j < 64; ++j) {
      const Mask m = mask_at(spec, g, j / 64.0);
      const double expect = spec.kind == SubdomainKind::kMobileQuarter ? 0.25 : 1.0 / 16;
      CHECK(m.fraction() == expect);
      cover |= m;
    }
    CHECK(cover.count() == g.nodes());
  }
  SubdomainSpec slow = SubdomainSpec::mobile_quarter(4.0);
  CHECK(mask_at(slow, g, 1.0) == mask_at(SubdomainSpec::mobile_quarter(), g, 0.25));
}

TEST_CASE("subsample") {
  const Grid g(16);
  const PhysicalField s = sample_physical(g, [](double x, double) { return std::sin(x); });
  const CoarseLattice c = subsample(s, 2);
  CHECK(c.m == 4);
  for (int i = 0; i < 4; ++i) CHECK(c.at(i, 0) == doctest::Approx(std::sin(kTwoPi * 4 * i / 16)));
  const CoarseLattice id = subsample(s, 0);
  CHECK(std::equal(id.values.begin(), id.values.end(), s.values().begin()));
  CHECK_THROWS_AS(subsample(s, 5), ContractError);
}

TEST_CASE("smoother one refinement step") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  const Grid g(8);
  for (int trial = 0; trial < 20; ++trial) {
    // Coarse 4x4 lattice with stride 2; inspect the cell with corners at (2,2).
    PhysicalField fine(g);
    for (double& v : fine.values()) v = u(rng);
    const CoarseLattice c = subsample(fine, 1);
    const PhysicalField out = smoother_kp(c, 1);
    const double a = fine.at(2, 2), b = fine.at(4, 2), cc = fine.at(4, 4), d = fine.at(2, 4);
    CHECK(out.at(3, 2) == (a + b) / 2);
    CHECK(out.at(4, 3) == (b + cc) / 2);
    CHECK(out.at(3, 4) == (cc + d) / 2);
    CHECK(out.at(2, 3) == (a + d) / 2);
    CHECK(out.at(3, 3) == (a + b + cc + d) / 4);
    CHECK(out.at(2, 2) == a);
  }
  CoarseLattice constant{4, 4, std::vector<double>(16, 2.5)};
  const PhysicalField flat = smoother_kp(constant, 2);
  for (double v : flat.values()) CHECK(v == 2.5);
  const PhysicalField r = random_physical(Grid(16), 3u);
  const PhysicalField same = smoother_kp(subsample(r, 0), 0);
  CHECK(std::equal(r.values().begin(), r.values().end(), same.values().begin()));
}

TEST_CASE("smoother composed with subsampling is a max-norm contraction") {
  const Grid g(64);
  for (int p = 1; p <= 4; ++p) {
    for (unsigned s = 0; s < 5; ++s) {
      const PhysicalField f = random_physical(g, 100 + s);
      const PhysicalField out = smoother_kp(subsample(f, p), p);
      CHECK(linf_norm(out) <= linf_norm(f) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("volume average interpolant") {
  const Grid g(64);
  const Mask full(g, true);
  PhysicalField c(g);
  for (double& v : c.values()) v = 1.75;
  const PhysicalField vc = volume_average_interpolant(c, 3, full);
  for (double v : vc.values()) CHECK(v == doctest::Approx(1.75));

  const PhysicalField s = sample_physical(g, [](double x, double) { return std::sin(x); });
  const PhysicalField vs = volume_average_interpolant(s, 2, full);
  // Discrete cell average of nodes 0..3, the node-sum analogue of (1 - cos h)/h.
  double expect = 0.0;
  for (int i = 0; i < 4; ++i) expect += std::sin(i * g.dx());
  expect /= 4;
  CHECK(vs.at(0, 0) == doctest::Approx(expect));
  CHECK(vs.at(3, 3) == doctest::Approx(expect));
  const double h = 4 * g.dx();
  CHECK(vs.at(0, 0) == doctest::Approx((1 - std::cos(h)) / h).epsilon(0.1));

  Mask partial(g);
  partial.set(5, 5);
  const PhysicalField vp = volume_average_interpolant(c, 2, partial);
  CHECK(vp.at(5, 5) == doctest::Approx(1.75 / 16));
  CHECK(vp.at(0, 0) == 0.0);
  CHECK(vp.at(4, 4) == 0.0);
}

TEST_CASE("nodal interpolant") {
  const Grid g(32);
  const Mask full(g, true);
  PhysicalField c(g);
  for (double& v : c.values()) v = -0.5;
  for (double v : nodal_interpolant(c, 2, full).values()) CHECK(v == -0.5);

  const PhysicalField s = sample_physical(g, [](double x, double) { return std::sin(x); });
  const PhysicalField ns = nodal_interpolant(s, 2, full);
  CHECK(ns.at(0, 0) == std::sin(2 * g.dx()));
  CHECK(ns.at(3, 0) == std::sin(2 * g.dx()));
  CHECK(ns.at(4, 0) == std::sin(6 * g.dx()));

  Mask m(g);
  m.set(0, 0);
  const PhysicalField nm = nodal_interpolant(c, 2, m);
  CHECK(nm.at(0, 0) == 0.0);
}

TEST_CASE("spectral projection") {
  const Grid g(16);
  SpectralField F = forward(random_physical(g, 4u));
  CHECK(spectral_project(F, 8) == F);
  SpectralField single(g);
  single.set(4, 1, Complex(1.0, 0.0));
  CHECK(spectral_project(single, 3).max_abs() == 0.0);
  const SpectralField once = spectral_project(F, 3);
  CHECK(spectral_project(once, 3) == once);
  CHECK_THROWS_AS(spectral_project(F, 0), ContractError);
}

TEST_CASE("observe") {
  const Grid g(64);
  SpectralField d = forward(random_physical(g, 8u));
  project_state(d);
  ObservationConfig identity;
  CHECK(observe(d, identity, 0.0) == d);

  ObservationConfig cfg;
  cfg.subdomain = named_subdomain("omega1");
  cfg.stride_p = 2;
  CHECK(observe(SpectralField(g), cfg, 0.0).max_abs() == 0.0);

  PhysicalField one(g);
  for (double& v : one.values()) v = 1.0;
  ObservationConfig o4;
  o4.subdomain = named_subdomain("omega4");
  o4.stride_p = 4;
  const Mask m4 = mask_at(o4.subdomain, g, 0.0);
  PhysicalField chi(g);
  for (int iy = 0; iy < 64; ++iy) {
    for (int ix = 0; ix < 64; ++ix) chi.at(ix, iy) = m4.at(ix, iy) ? 1.0 : 0.0;
  }
  CHECK(max_abs_difference(observe(forward(one), o4, 0.0), forward(chi)) < 1e-15);

  SpectralField d2 = forward(random_physical(g, 9u));
  project_state(d2);
  for (auto kind : {InterpolantKind::kNodalSmooth, InterpolantKind::kVolumeAverage}) {
    cfg.interpolant = kind;
    const SpectralField lhs = observe(2.5 * d + d2, cfg, 0.0);
    const SpectralField rhs = 2.5 * observe(d, cfg, 0.0) + observe(d2, cfg, 0.0);
    CHECK(max_abs_difference(lhs, rhs) < 1e-12);
  }

  cfg.spectral_cutoff = 5;
  const SpectralField cut = observe(d, cfg, 0.0);
  for (int iy = 0; iy < 64; ++iy) {
    for (int kx = 0; kx < g.columns(); ++kx) {
      if (std::max(kx, std::abs(g.wavenumber(iy))) > 5) CHECK(cut.stored(iy, kx) == Complex(0.0));
    }
  }

  ObservationConfig bad;
  bad.stride_p = 7;
  CHECK_THROWS_AS(bad.validate(g), ContractError);
  CHECK(parse_interpolant_kind("volume_average") == InterpolantKind::kVolumeAverage);
  CHECK_THROWS_AS(parse_interpolant_kind("cubic"), ConfigError);
}
