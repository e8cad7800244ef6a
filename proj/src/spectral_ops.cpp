#include "nudge2d/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

#include "nudge2d/errors.hpp"
#include "nudge2d/transforms.hpp"

namespace nudge2d {
namespace {

// Wavenumber used for differentiation; the unpaired Nyquist mode has none.
inline double diff_k(int k, int n) noexcept {
  return (k == n / 2 || k == -n / 2) ? 0.0 : static_cast<double>(k);
}

template <typename Fn>
void for_each_mode(SpectralField& field, Fn&& fn) {
  const Grid& g = field.grid();
  const int n = g.n();
  const int cols = g.columns();
  for (int iy = 0; iy < n; ++iy) {
    const int ky = g.wavenumber(iy);
    for (int kx = 0; kx < cols; ++kx) fn(kx, ky, field.stored(iy, kx));
  }
}

}  // namespace

int dealias_cutoff(int n) noexcept { return (n - 1) / 3; }

void dealias_in_place(SpectralField& field) {
  const int n = field.n();
  for_each_mode(field, [n](int kx, int ky, Complex& c) {
    if (is_aliased_mode(kx, ky, n)) c = 0.0;
  });
}

SpectralField dealias(SpectralField field) {
  dealias_in_place(field);
  return field;
}

void project_state(SpectralField& field) {
  field.enforce_hermitian();
  dealias_in_place(field);
  field.zero_mean();
}

SpectralField solve_poisson(const SpectralField& omega) {
  const double tol = 1e-14 * std::max(1.0, omega.max_abs());
  if (std::abs(omega.mean()) > tol) {
    throw ContractError("solve_poisson requires a zero-mean field");
  }
  SpectralField psi = omega;
  for_each_mode(psi, [](int kx, int ky, Complex& c) {
    const int k2 = kx * kx + ky * ky;
    c = k2 == 0 ? Complex{} : c / static_cast<double>(k2);
  });
  return psi;
}

SpectralField apply_neg_laplacian(SpectralField field) {
  for_each_mode(field, [](int kx, int ky, Complex& c) {
    c *= static_cast<double>(kx * kx + ky * ky);
  });
  return field;
}

SpectralField ddx(const SpectralField& field) {
  SpectralField out = field;
  const int n = field.n();
  for_each_mode(out, [n](int kx, int, Complex& c) {
    c *= Complex(0.0, diff_k(kx, n));
  });
  return out;
}

SpectralField ddy(const SpectralField& field) {
  SpectralField out = field;
  const int n = field.n();
  for_each_mode(out, [n](int, int ky, Complex& c) {
    c *= Complex(0.0, diff_k(ky, n));
  });
  return out;
}

std::pair<SpectralField, SpectralField> velocity_from_vorticity(const SpectralField& omega) {
  SpectralField psi = solve_poisson(omega);
  const int n = omega.n();
  // Drop unpaired Nyquist content so that k.u = 0 holds mode by mode.
  for_each_mode(psi, [n](int kx, int ky, Complex& c) {
    if (kx == n / 2 || ky == -n / 2) c = 0.0;
  });
  SpectralField u = ddy(psi);
  SpectralField v = ddx(psi);
  v *= -1.0;
  return {std::move(u), std::move(v)};
}

AdvectionWorkspace::AdvectionWorkspace(Grid grid)
    : grid_(grid),
      omega_d_(grid),
      spec_tmp_(grid),
      u_(grid),
      v_(grid),
      wx_(grid),
      wy_(grid) {}

void AdvectionWorkspace::evaluate(const SpectralField& omega, SpectralField& out) {
  if (!(omega.grid() == grid_) || !(out.grid() == grid_)) {
    throw ContractError("grid mismatch in advection workspace");
  }
  const int n = grid_.n();
  const int cols = grid_.columns();
  omega_d_ = omega;
  dealias_in_place(omega_d_);
  omega_d_.zero_mean();

  // u = d psi/dy, v = -d psi/dx with psi = omega / |k|^2; the 2/3 band
  // never reaches the Nyquist mode.
  for (int iy = 0; iy < n; ++iy) {
    const int ky = grid_.wavenumber(iy);
    for (int kx = 0; kx < cols; ++kx) {
      const int k2 = kx * kx + ky * ky;
      const Complex w = omega_d_.stored(iy, kx);
      spec_tmp_.stored(iy, kx) =
          k2 == 0 ? Complex{} : Complex(0.0, static_cast<double>(ky)) * w / static_cast<double>(k2);
    }
  }
  inverse_into(spec_tmp_, u_);
  for (int iy = 0; iy < n; ++iy) {
    const int ky = grid_.wavenumber(iy);
    for (int kx = 0; kx < cols; ++kx) {
      const int k2 = kx * kx + ky * ky;
      const Complex w = omega_d_.stored(iy, kx);
      spec_tmp_.stored(iy, kx) =
          k2 == 0 ? Complex{} : Complex(0.0, -static_cast<double>(kx)) * w / static_cast<double>(k2);
    }
  }
  inverse_into(spec_tmp_, v_);
  for (int iy = 0; iy < n; ++iy) {
    for (int kx = 0; kx < cols; ++kx) {
      spec_tmp_.stored(iy, kx) = Complex(0.0, static_cast<double>(kx)) * omega_d_.stored(iy, kx);
    }
  }
  inverse_into(spec_tmp_, wx_);
  for (int iy = 0; iy < n; ++iy) {
    const int ky = grid_.wavenumber(iy);
    for (int kx = 0; kx < cols; ++kx) {
      spec_tmp_.stored(iy, kx) = Complex(0.0, static_cast<double>(ky)) * omega_d_.stored(iy, kx);
    }
  }
  inverse_into(spec_tmp_, wy_);

  auto u = u_.values();
  auto v = v_.values();
  auto wx = wx_.values();
  auto wy = wy_.values();
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = u[i] * wx[i] + v[i] * wy[i];
  forward_into(u_, out);
  project_state(out);
}

SpectralField nonlinear_term(const SpectralField& omega) {
  AdvectionWorkspace ws(omega.grid());
  SpectralField out(omega.grid());
  ws.evaluate(omega, out);
  return out;
}

double l2_norm(const PhysicalField& field) {
  double sum = 0.0;
  for (double v : field.values()) sum += v * v;
  return std::sqrt(sum) * field.grid().dx();
}

double linf_norm(const PhysicalField& field) {
  double m = 0.0;
  for (double v : field.values()) m = std::max(m, std::abs(v));
  return m;
}

double masked_l2_norm(const PhysicalField& field, const Mask& mask) {
  if (!(field.grid() == mask.grid())) throw ContractError("grid mismatch in masked norm");
  auto values = field.values();
  auto bits = mask.bits();
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (bits[i] != 0) {
      sum += values[i] * values[i];
      ++hits;
    }
  }
  if (hits == 0) throw DegenerateError("masked norm over an empty region");
  return std::sqrt(sum) * field.grid().dx();
}

double l2_norm(const SpectralField& field) {
  const double power = weighted_power(field, [](int, int) { return 1.0; });
  return field.grid().length() * std::sqrt(power);
}

}  // namespace nudge2d
