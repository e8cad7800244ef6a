#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "nudge2d/grid.hpp"

namespace nudge2d {

using Complex = std::complex<double>;

/// Real scalar field sampled on the grid nodes.
class PhysicalField {
 public:
  explicit PhysicalField(Grid grid);
  PhysicalField(Grid grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  int n() const noexcept { return grid_.n(); }

  double& at(int ix, int iy) { return values_[offset(ix, iy)]; }
  double at(int ix, int iy) const { return values_[offset(ix, iy)]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  bool all_finite() const noexcept;

  PhysicalField& operator+=(const PhysicalField& other);
  PhysicalField& operator-=(const PhysicalField& other);
  PhysicalField& operator*=(double scale);

 private:
  std::size_t offset(int ix, int iy) const noexcept {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(grid_.n()) +
           static_cast<std::size_t>(ix);
  }

  Grid grid_;
  std::vector<double> values_;
};

PhysicalField operator-(PhysicalField lhs, const PhysicalField& rhs);
PhysicalField operator+(PhysicalField lhs, const PhysicalField& rhs);

/// Fourier coefficients of a real field, normalized as series amplitudes:
/// f(x) = sum_k coeff(k) exp(i k.x).  Only the kx >= 0 half plane is stored;
/// the other half follows from coeff(-k) = conj(coeff(k)).
class SpectralField {
 public:
  explicit SpectralField(Grid grid);
  SpectralField(Grid grid, std::vector<Complex> half_spectrum);

  const Grid& grid() const noexcept { return grid_; }
  int n() const noexcept { return grid_.n(); }

  /// Coefficient for any integer wavenumber pair; indices wrap modulo n.
  Complex coeff(int kx, int ky) const;
  /// Sets coeff(kx, ky) and, where both live in storage, its conjugate
  /// partner coeff(-kx, -ky).
  void set(int kx, int ky, Complex value);

  /// Raw half-plane storage, row = ky index (FFT order), column = kx.
  std::span<Complex> data() noexcept { return coeffs_; }
  std::span<const Complex> data() const noexcept { return coeffs_; }
  Complex& stored(int ky_index, int kx) {
    return coeffs_[static_cast<std::size_t>(ky_index) * grid_.columns() + kx];
  }
  const Complex& stored(int ky_index, int kx) const {
    return coeffs_[static_cast<std::size_t>(ky_index) * grid_.columns() + kx];
  }

  /// Mean value coefficient.
  Complex mean() const { return coeffs_[0]; }
  void zero_mean() { coeffs_[0] = 0.0; }

  bool all_finite() const noexcept;
  /// Largest coefficient modulus.
  double max_abs() const noexcept;

  /// Restores exact conjugate pairing in the self-conjugate columns
  /// (kx = 0 and kx = n/2) by averaging each pair.
  void enforce_hermitian();

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);
  /// this += scale * other
  SpectralField& axpy(double scale, const SpectralField& other);

  friend bool operator==(const SpectralField& a, const SpectralField& b) {
    return a.grid_ == b.grid_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_same_grid(const SpectralField& other) const;

  Grid grid_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField lhs, const SpectralField& rhs);
SpectralField operator-(SpectralField lhs, const SpectralField& rhs);
SpectralField operator*(double scale, SpectralField field);

/// Node indicator of an observation region.
class Mask {
 public:
  explicit Mask(Grid grid, bool fill = false);

  const Grid& grid() const noexcept { return grid_; }
  int n() const noexcept { return grid_.n(); }

  bool at(int ix, int iy) const { return bits_[offset(ix, iy)] != 0; }
  void set(int ix, int iy, bool on = true) { bits_[offset(ix, iy)] = on ? 1 : 0; }

  std::span<const unsigned char> bits() const noexcept { return bits_; }

  std::size_t count() const noexcept;
  double fraction() const noexcept;
  bool empty() const noexcept { return count() == 0; }

  Mask& operator|=(const Mask& other);
  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  std::size_t offset(int ix, int iy) const noexcept {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(grid_.n()) +
           static_cast<std::size_t>(ix);
  }

  Grid grid_;
  std::vector<unsigned char> bits_;
};

/// Field values multiplied by the indicator (zero outside the mask).
PhysicalField apply_mask(PhysicalField field, const Mask& mask);

}  // namespace nudge2d
