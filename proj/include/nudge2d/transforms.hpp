#pragma once

#include "nudge2d/fields.hpp"

namespace nudge2d {

/// Physical values to series coefficients (FFT divided by n^2).
/// Throws ContractError on non-finite input.
SpectralField forward(const PhysicalField& field);

/// Series coefficients to nodal values.  Throws ContractError when the
/// self-conjugate columns break Hermitian pairing by more than 1e-12
/// relative to the largest coefficient.
PhysicalField inverse(const SpectralField& field);

/// Unchecked variants writing into caller-owned storage; used on hot paths
/// where the inputs are known to be well formed.
void forward_into(const PhysicalField& field, SpectralField& out);
void inverse_into(const SpectralField& field, PhysicalField& out);

}  // namespace nudge2d
