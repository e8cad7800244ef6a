#pragma once

#include <cstddef>
#include <numbers>

namespace nudge2d {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Smallest nonzero eigenvalue of -Laplacian on the zero-mean [0,2pi]^2 torus.
inline constexpr double kLambda1 = 1.0;

/// Uniform n x n node lattice on the periodic box [0, 2pi)^2.
///
/// Physical values are stored row-major with the y index outermost,
/// value(ix, iy) = values[iy * n + ix] at (ix * dx, iy * dx).  Spectra use
/// the half-plane layout produced by a real-to-complex transform: rows are
/// ky indices in FFT order, columns are kx = 0 .. n/2.
class Grid {
 public:
  explicit Grid(int n);

  int n() const noexcept { return n_; }
  double length() const noexcept { return kTwoPi; }
  double dx() const noexcept { return kTwoPi / n_; }

  /// Number of stored spectral columns (n/2 + 1).
  int columns() const noexcept { return n_ / 2 + 1; }
  std::size_t nodes() const noexcept {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  }
  std::size_t modes() const noexcept {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(columns());
  }

  /// Signed wavenumber for an FFT-ordered index in [0, n).
  int wavenumber(int index) const noexcept {
    return index < n_ / 2 ? index : index - n_;
  }
  /// FFT-ordered index for any integer wavenumber (wraps modulo n).
  int index(int k) const noexcept {
    const int r = k % n_;
    return r < 0 ? r + n_ : r;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
};

}  // namespace nudge2d
