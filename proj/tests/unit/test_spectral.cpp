#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "nudge2d/errors.hpp"
#include "nudge2d/field_io.hpp"
#include "nudge2d/inequality_lab.hpp"
#include "nudge2d/spectral_ops.hpp"
#include "nudge2d/transforms.hpp"
#include "test_support.hpp"

using namespace nudge2d;
using nudge2d::testing::max_abs_difference;
using nudge2d::testing::random_physical;
using nudge2d::testing::sample_physical;
constexpr double kPi = std::numbers::pi;

TEST_CASE("grid validates size") {
  CHECK_THROWS_AS(Grid(4), ContractError);
  CHECK_THROWS_AS(Grid(24), ContractError);
  const Grid g(64);
  CHECK(g.dx() * g.n() == doctest::Approx(kTwoPi).epsilon(1e-15));
  CHECK(g.columns() == 33);
  CHECK(g.wavenumber(33) == -31);
  CHECK(g.index(-1) == 63);
}

TEST_CASE("forward of single modes and constants") {
  const Grid g(16);
  const SpectralField c = forward(sample_physical(g, [](double x, double) { return std::cos(x); }));
  for (int ky = -8; ky < 8; ++ky) {
    for (int kx = -8; kx < 8; ++kx) {
      const double expect = (ky == 0 && (kx == 1 || kx == -1)) ? 0.5 : 0.0;
      CHECK(std::abs(c.coeff(kx, ky) - Complex(expect)) < 1e-15);
    }
  }
  const SpectralField three = forward(sample_physical(g, [](double, double) { return 3.0; }));
  CHECK(std::abs(three.coeff(0, 0) - 3.0) < 1e-15);
  CHECK(three.max_abs() == doctest::Approx(3.0));
}

TEST_CASE("forward rejects non-finite input") {
  PhysicalField f(Grid(8));
  f.at(1, 2) = std::nan("");
  CHECK_THROWS_AS(forward(f), ContractError);
}

TEST_CASE("round trips") {
  for (int n : {8, 16, 64}) {
    const Grid g(n);
    const PhysicalField f = random_physical(g, 7u + static_cast<unsigned>(n));
    const PhysicalField back = inverse(forward(f));
    double err = 0.0;
    for (std::size_t i = 0; i < f.values().size(); ++i) {
      err = std::max(err, std::abs(f.values()[i] - back.values()[i]));
    }
    CHECK(err < 1e-12);

    SpectralField F = forward(random_physical(g, 99u));
    const SpectralField again = forward(inverse(F));
    CHECK(max_abs_difference(F, again) < 1e-12);
  }
  const PhysicalField zero = inverse(SpectralField(Grid(8)));
  for (double v : zero.values()) CHECK(v == 0.0);
}

TEST_CASE("inverse of cos(x) coefficients") {
  const Grid g(16);
  SpectralField F(g);
  F.set(1, 0, 0.5);
  const PhysicalField f = inverse(F);
  for (int iy = 0; iy < 16; ++iy) {
    for (int ix = 0; ix < 16; ++ix) CHECK(f.at(ix, iy) == doctest::Approx(std::cos(ix * g.dx())));
  }
}

TEST_CASE("inverse rejects broken Hermitian pairing") {
  const Grid g(16);
  SpectralField F(g);
  F.stored(g.index(2), 0) = Complex(1.0, 0.0);
  F.stored(g.index(-2), 0) = Complex(0.0, 0.0);
  CHECK_THROWS_AS(inverse(F), ContractError);
}

TEST_CASE("dealias cutoff on n=16") {
  const Grid g(16);
  CHECK(dealias_cutoff(16) == 5);
  CHECK(dealias_cutoff(128) == 42);
  SpectralField F = forward(random_physical(g, 3u));
  const SpectralField D = dealias(F);
  for (int ky = -8; ky < 8; ++ky) {
    for (int kx = 0; kx <= 8; ++kx) {
      const bool cut = std::max(std::abs(kx), std::abs(ky)) >= 6;
      if (cut) {
        CHECK(D.coeff(kx, ky) == Complex(0.0));
      } else {
        CHECK(D.coeff(kx, ky) == F.coeff(kx, ky));
      }
    }
  }
  CHECK(dealias(D) == D);
}

TEST_CASE("solve_poisson examples") {
  const Grid g(16);
  const SpectralField sinx = forward(sample_physical(g, [](double x, double) { return std::sin(x); }));
  CHECK(max_abs_difference(solve_poisson(sinx), sinx) < 1e-15);

  const SpectralField tg =
      forward(sample_physical(g, [](double x, double y) { return 2 * std::sin(x) * std::sin(y); }));
  const SpectralField sxsy =
      forward(sample_physical(g, [](double x, double y) { return std::sin(x) * std::sin(y); }));
  CHECK(max_abs_difference(solve_poisson(tg), sxsy) < 1e-15);

  SpectralField r = forward(random_physical(g, 5u));
  r.zero_mean();
  CHECK(max_abs_difference(solve_poisson(apply_neg_laplacian(r)), r) < 1e-13);

  SpectralField with_mean = r;
  with_mean.stored(0, 0) = 0.25;
  CHECK_THROWS_AS(solve_poisson(with_mean), ContractError);
}

TEST_CASE("velocity from vorticity") {
  const Grid g(16);
  const SpectralField sinx = forward(sample_physical(g, [](double x, double) { return std::sin(x); }));
  auto [u, v] = velocity_from_vorticity(sinx);
  const PhysicalField up = inverse(u), vp = inverse(v);
  for (int iy = 0; iy < 16; ++iy) {
    for (int ix = 0; ix < 16; ++ix) {
      CHECK(std::abs(up.at(ix, iy)) < 1e-14);
      CHECK(vp.at(ix, iy) == doctest::Approx(-std::cos(ix * g.dx())));
    }
  }

  const SpectralField tg =
      forward(sample_physical(g, [](double x, double y) { return 2 * std::sin(x) * std::sin(y); }));
  auto [ut, vt] = velocity_from_vorticity(tg);
  const PhysicalField utp = inverse(ut), vtp = inverse(vt);
  for (int iy = 0; iy < 16; ++iy) {
    for (int ix = 0; ix < 16; ++ix) {
      const double x = ix * g.dx(), y = iy * g.dx();
      CHECK(std::abs(utp.at(ix, iy) - std::sin(x) * std::cos(y)) < 1e-14);
      CHECK(std::abs(vtp.at(ix, iy) + std::cos(x) * std::sin(y)) < 1e-14);
    }
  }

  SpectralField r = forward(random_physical(g, 11u));
  r.zero_mean();
  r.enforce_hermitian();
  auto [ur, vr] = velocity_from_vorticity(r);
  double div = 0.0, unorm = 0.0;
  for (int iy = 0; iy < 16; ++iy) {
    const int ky = g.wavenumber(iy);
    for (int kx = 0; kx <= 8; ++kx) {
      div = std::max(div, std::abs(static_cast<double>(kx) * ur.stored(iy, kx) +
                                   static_cast<double>(ky) * vr.stored(iy, kx)));
      unorm = std::max(unorm, std::abs(ur.stored(iy, kx)));
    }
  }
  CHECK(div <= 1e-14 * unorm);
}

TEST_CASE("nonlinear term vanishes on eigenmodes and shear") {
  const Grid g(32);
  const SpectralField tg =
      forward(sample_physical(g, [](double x, double y) { return 2 * std::sin(x) * std::sin(y); }));
  CHECK(nonlinear_term(tg).max_abs() < 1e-15);
  SpectralField shear(g);
  shear.set(1, 0, Complex(0.3, -0.2));
  CHECK(nonlinear_term(shear).max_abs() < 1e-15);
}

TEST_CASE("nonlinear term matches direct convolution on n=16") {
  const Grid g(16);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const SpectralField w = sample_bandlimited(5, seed, g);
    const SpectralField pseudo = nonlinear_term(w);
    const SpectralField direct = nudge2d::testing::convolution_advection(w);
    CHECK(max_abs_difference(pseudo, direct) < 1e-12);
  }
}

TEST_CASE("advection is skew-symmetric") {
  const Grid g(64);
  const SpectralField w = sample_bandlimited(12, 42, g);
  const SpectralField nl = nonlinear_term(w);
  const PhysicalField a = inverse(nl), b = inverse(w);
  double dot = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    dot += a.values()[i] * b.values()[i];
    scale += std::abs(a.values()[i] * b.values()[i]);
  }
  CHECK(std::abs(dot) <= 1e-10 * scale);
}

TEST_CASE("norms") {
  const Grid g(64);
  const PhysicalField s = sample_physical(g, [](double x, double) { return std::sin(x); });
  CHECK(l2_norm(s) == doctest::Approx(kPi * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(linf_norm(s) == doctest::Approx(1.0).epsilon(1e-3));

  PhysicalField one(g);
  for (double& v : one.values()) v = 1.0;
  Mask quarter(g);
  for (int iy = 0; iy < 32; ++iy) {
    for (int ix = 0; ix < 32; ++ix) quarter.set(ix, iy);
  }
  CHECK(masked_l2_norm(one, quarter) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK_THROWS_AS(masked_l2_norm(one, Mask(g)), DegenerateError);

  const PhysicalField zero(g);
  CHECK(l2_norm(zero) == 0.0);
  CHECK(linf_norm(zero) == 0.0);
  CHECK(masked_l2_norm(zero, quarter) == 0.0);

  const PhysicalField r = random_physical(g, 17u);
  CHECK(l2_norm(forward(r)) == doctest::Approx(l2_norm(r)).epsilon(1e-12));
}

TEST_CASE("NFLD round trip and header") {
  const Grid g(16);
  const PhysicalField f = random_physical(g, 23u);
  std::stringstream ss;
  write_nfld(ss, f);
  const std::string bytes = ss.str();
  CHECK(bytes.size() == 16 + 8 * 256);
  CHECK(bytes.substr(0, 4) == "NFLD");
  CHECK(static_cast<unsigned char>(bytes[4]) == 16);
  const PhysicalField back = read_nfld(ss);
  CHECK(std::equal(f.values().begin(), f.values().end(), back.values().begin()));

  std::stringstream bad("NFLX0000000000000000");
  CHECK_THROWS_AS(read_nfld(bad), FormatError);
  std::stringstream truncated(bytes.substr(0, 100));
  CHECK_THROWS_AS(read_nfld(truncated), FormatError);
}
