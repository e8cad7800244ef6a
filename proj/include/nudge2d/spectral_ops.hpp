#pragma once

#include <utility>

#include "nudge2d/fields.hpp"

namespace nudge2d {

/// True for modes removed by the 2/3 rule: max(|kx|,|ky|) >= n/3.
inline bool is_aliased_mode(int kx, int ky, int n) noexcept {
  const int a = kx < 0 ? -kx : kx;
  const int b = ky < 0 ? -ky : ky;
  return 3 * (a > b ? a : b) >= n;
}

/// Largest retained wavenumber index per axis under the 2/3 rule.
int dealias_cutoff(int n) noexcept;

SpectralField dealias(SpectralField field);
void dealias_in_place(SpectralField& field);

/// Zeroes the mean, restores Hermitian pairing and truncates to the 2/3
/// band; the projection applied to every vorticity-like state.
void project_state(SpectralField& field);

/// Streamfunction psi with -Laplacian(psi) = omega.  Throws ContractError
/// if the mean coefficient exceeds 1e-14 (scaled by max(1, max |coeff|)).
SpectralField solve_poisson(const SpectralField& omega);

/// Multiplies every mode by |k|^2 (the operator -Laplacian).
SpectralField apply_neg_laplacian(SpectralField field);

/// Spectral derivatives; the Nyquist wavenumber is differentiated to zero.
SpectralField ddx(const SpectralField& field);
SpectralField ddy(const SpectralField& field);

/// u = (d psi/dy, -d psi/dx) for the streamfunction of omega.
std::pair<SpectralField, SpectralField> velocity_from_vorticity(const SpectralField& omega);

/// Dealiased spectrum of u . grad(omega).
SpectralField nonlinear_term(const SpectralField& omega);

/// Reusable buffers for repeated advection evaluations on one grid.
class AdvectionWorkspace {
 public:
  explicit AdvectionWorkspace(Grid grid);
  /// Writes the dealiased spectrum of u . grad(omega) into out.
  void evaluate(const SpectralField& omega, SpectralField& out);

 private:
  Grid grid_;
  SpectralField omega_d_, spec_tmp_;
  PhysicalField u_, v_, wx_, wy_;
};

/// Discrete L2 norm sqrt(sum f^2 dx^2).
double l2_norm(const PhysicalField& field);
double linf_norm(const PhysicalField& field);
/// L2 norm restricted to mask nodes.  Throws DegenerateError on an empty mask.
double masked_l2_norm(const PhysicalField& field, const Mask& mask);

/// Parseval form L * sqrt(sum over the full spectrum of |coeff|^2).
double l2_norm(const SpectralField& field);

/// Sum over the full spectrum of weight(kx, ky) * |coeff|^2.  Visits each
/// stored mode once and doubles the modes whose conjugate is not stored.
template <typename Weight>
double weighted_power(const SpectralField& field, Weight&& weight) {
  const Grid& g = field.grid();
  const int n = g.n();
  const int cols = g.columns();
  double sum = 0.0;
  for (int iy = 0; iy < n; ++iy) {
    const int ky = g.wavenumber(iy);
    for (int ix = 0; ix < cols; ++ix) {
      const double p = std::norm(field.stored(iy, ix));
      if (p == 0.0) continue;
      const double mult = (ix == 0 || ix == n / 2) ? 1.0 : 2.0;
      sum += mult * weight(ix, ky) * p;
    }
  }
  return sum;
}

}  // namespace nudge2d
