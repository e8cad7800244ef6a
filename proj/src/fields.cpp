#include "nudge2d/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nudge2d/errors.hpp"

namespace nudge2d {

// ---------------------------------------------------------------- physical

PhysicalField::PhysicalField(Grid grid)
    : grid_(grid), values_(grid.nodes(), 0.0) {}

PhysicalField::PhysicalField(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.nodes()) {
    throw ContractError("physical field has " + std::to_string(values_.size()) +
                        " values, grid needs " + std::to_string(grid_.nodes()));
  }
}

bool PhysicalField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

PhysicalField& PhysicalField::operator+=(const PhysicalField& other) {
  if (!(grid_ == other.grid_)) throw ContractError("grid mismatch in field sum");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

PhysicalField& PhysicalField::operator-=(const PhysicalField& other) {
  if (!(grid_ == other.grid_)) throw ContractError("grid mismatch in field difference");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

PhysicalField& PhysicalField::operator*=(double scale) {
  for (double& v : values_) v *= scale;
  return *this;
}

PhysicalField operator-(PhysicalField lhs, const PhysicalField& rhs) {
  lhs -= rhs;
  return lhs;
}

PhysicalField operator+(PhysicalField lhs, const PhysicalField& rhs) {
  lhs += rhs;
  return lhs;
}

// ---------------------------------------------------------------- spectral

SpectralField::SpectralField(Grid grid)
    : grid_(grid), coeffs_(grid.modes(), Complex{}) {}

SpectralField::SpectralField(Grid grid, std::vector<Complex> half_spectrum)
    : grid_(grid), coeffs_(std::move(half_spectrum)) {
  if (coeffs_.size() != grid_.modes()) {
    throw ContractError("spectral field has " + std::to_string(coeffs_.size()) +
                        " coefficients, grid needs " + std::to_string(grid_.modes()));
  }
}

Complex SpectralField::coeff(int kx, int ky) const {
  const int n = grid_.n();
  const int ix = grid_.index(kx);
  const int iy = grid_.index(ky);
  if (ix <= n / 2) return stored(iy, ix);
  return std::conj(stored(grid_.index(-ky), n - ix));
}

void SpectralField::set(int kx, int ky, Complex value) {
  const int n = grid_.n();
  const int ix = grid_.index(kx);
  const int iy = grid_.index(ky);
  if (ix > n / 2) {
    stored(grid_.index(-ky), n - ix) = std::conj(value);
    return;
  }
  if (ix == 0 || ix == n / 2) {
    const int mirror = grid_.index(-ky);
    if (mirror == iy) {
      // Self-conjugate mode: only the real part is representable.
      stored(iy, ix) = Complex(value.real(), 0.0);
      return;
    }
    stored(mirror, ix) = std::conj(value);
  }
  stored(iy, ix) = value;
}

bool SpectralField::all_finite() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

double SpectralField::max_abs() const noexcept {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

void SpectralField::enforce_hermitian() {
  const int n = grid_.n();
  for (int ix : {0, n / 2}) {
    for (int iy = 0; iy <= n / 2; ++iy) {
      const int mirror = (n - iy) % n;
      Complex& a = stored(iy, ix);
      if (mirror == iy) {
        a = Complex(a.real(), 0.0);
        continue;
      }
      Complex& b = stored(mirror, ix);
      const Complex avg = 0.5 * (a + std::conj(b));
      a = avg;
      b = std::conj(avg);
    }
  }
}

void SpectralField::check_same_grid(const SpectralField& other) const {
  if (!(grid_ == other.grid_)) throw ContractError("grid mismatch in spectral arithmetic");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  check_same_grid(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  check_same_grid(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (Complex& c : coeffs_) c *= scale;
  return *this;
}

SpectralField& SpectralField::axpy(double scale, const SpectralField& other) {
  check_same_grid(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += scale * other.coeffs_[i];
  return *this;
}

SpectralField operator+(SpectralField lhs, const SpectralField& rhs) {
  lhs += rhs;
  return lhs;
}

SpectralField operator-(SpectralField lhs, const SpectralField& rhs) {
  lhs -= rhs;
  return lhs;
}

SpectralField operator*(double scale, SpectralField field) {
  field *= scale;
  return field;
}

// ---------------------------------------------------------------- mask

Mask::Mask(Grid grid, bool fill) : grid_(grid), bits_(grid.nodes(), fill ? 1 : 0) {}

std::size_t Mask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

double Mask::fraction() const noexcept {
  return static_cast<double>(count()) / static_cast<double>(grid_.nodes());
}

Mask& Mask::operator|=(const Mask& other) {
  if (!(grid_ == other.grid_)) throw ContractError("grid mismatch in mask union");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

PhysicalField apply_mask(PhysicalField field, const Mask& mask) {
  if (!(field.grid() == mask.grid())) throw ContractError("grid mismatch applying mask");
  auto values = field.values();
  auto bits = mask.bits();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (bits[i] == 0) values[i] = 0.0;
  }
  return field;
}

}  // namespace nudge2d
