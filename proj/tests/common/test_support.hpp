#pragma once

#include <cmath>
#include <random>

#include "nudge2d/fields.hpp"
#include "nudge2d/spectral_ops.hpp"
#include "nudge2d/transforms.hpp"

namespace nudge2d::testing {

inline PhysicalField sample_physical(Grid grid, double (*f)(double, double)) {
  PhysicalField out(grid);
  for (int iy = 0; iy < grid.n(); ++iy) {
    for (int ix = 0; ix < grid.n(); ++ix) out.at(ix, iy) = f(ix * grid.dx(), iy * grid.dx());
  }
  return out;
}

inline PhysicalField random_physical(Grid grid, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PhysicalField out(grid);
  for (double& v : out.values()) v = u(rng);
  return out;
}

/// Direct O(n^4) evaluation of the dealiased spectrum of u . grad(omega),
/// with omega truncated to the retained band first.
inline SpectralField convolution_advection(const SpectralField& omega_in) {
  const Grid g = omega_in.grid();
  const int n = g.n();
  const SpectralField omega = dealias(omega_in);
  const int lo = -n / 2, hi = n / 2 - 1;
  auto w = [&](int kx, int ky) { return omega.coeff(kx, ky); };
  auto psi = [&](int kx, int ky) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
    return k2 == 0.0 ? Complex(0.0) : w(kx, ky) / k2;
  };
  const Complex I(0.0, 1.0);
  SpectralField out(g);
  for (int ky = lo; ky <= hi; ++ky) {
    for (int kx = 0; kx <= n / 2; ++kx) {
      if (is_aliased_mode(kx, ky, n)) continue;
      Complex sum = 0.0;
      for (int py = lo; py <= hi; ++py) {
        for (int px = lo; px <= hi; ++px) {
          if (is_aliased_mode(px, py, n)) continue;
          const int qx = kx - px, qy = ky - py;
          if (is_aliased_mode(qx, qy, n)) continue;
          const Complex u = I * static_cast<double>(py) * psi(px, py);
          const Complex v = -I * static_cast<double>(px) * psi(px, py);
          const Complex wx = I * static_cast<double>(qx) * w(qx, qy);
          const Complex wy = I * static_cast<double>(qy) * w(qx, qy);
          sum += u * wx + v * wy;
        }
      }
      out.stored(g.index(ky), kx) = sum;
    }
  }
  return out;
}

inline double max_abs_difference(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace nudge2d::testing
