#include "nudge2d/forcing.hpp"

#include <cmath>
#include <random>
#include <string>

#include "nudge2d/errors.hpp"
#include "nudge2d/spectral_ops.hpp"

namespace nudge2d {

SpectralField build_forcing(const ForcingSpec& spec, Grid grid) {
  const int n = grid.n();
  if (spec.band_lo <= 0 || spec.band_lo > spec.band_hi) {
    throw ContractError("forcing band must satisfy 0 < band_lo <= band_hi");
  }
  if (3 * spec.band_hi >= n) {
    throw ContractError("forcing band_hi=" + std::to_string(spec.band_hi) +
                        " does not survive dealiasing on n=" + std::to_string(n));
  }
  if (!(spec.nu > 0.0)) throw ContractError("forcing requires nu > 0");
  if (!(spec.grashof >= 0.0)) throw ContractError("forcing requires grashof >= 0");

  const int lo2 = spec.band_lo * spec.band_lo;
  const int hi2 = spec.band_hi * spec.band_hi;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);

  SpectralField f(grid);
  int count = 0;
  // Half plane kx > 0, plus kx = 0 with ky > 0; the mirror follows by symmetry.
  for (int kx = 0; kx <= spec.band_hi; ++kx) {
    for (int ky = -spec.band_hi; ky <= spec.band_hi; ++ky) {
      if (kx == 0 && ky <= 0) continue;
      const int k2 = kx * kx + ky * ky;
      if (k2 < lo2 || k2 > hi2) continue;
      f.set(kx, ky, std::polar(1.0, phase(rng)));
      ++count;
    }
  }
  if (count == 0) throw ContractError("forcing annulus contains no lattice points");

  const double target = spec.grashof * spec.nu * spec.nu * kLambda1;
  f *= target / l2_norm(f);
  return f;
}

double grashof(const SpectralField& f, double nu) {
  if (!(nu > 0.0)) throw ContractError("grashof requires nu > 0");
  return l2_norm(f) / (nu * nu * kLambda1);
}

}  // namespace nudge2d
