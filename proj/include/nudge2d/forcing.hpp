#pragma once

#include <cstdint>

#include "nudge2d/fields.hpp"

namespace nudge2d {

/// Time-independent forcing supported on the annulus band_lo <= |k| <= band_hi.
struct ForcingSpec {
  int band_lo = 10;
  int band_hi = 12;
  double grashof = 5e4;
  double nu = 1e-3;
  std::uint64_t seed = 0;
};

/// Seeded unit-modulus phases on the annulus, Hermitian paired and scaled so
/// that the L2 norm equals grashof * nu^2 * lambda1.
SpectralField build_forcing(const ForcingSpec& spec, Grid grid);

/// G = |f|_{L2} / (nu^2 lambda1).
double grashof(const SpectralField& f, double nu);

}  // namespace nudge2d
