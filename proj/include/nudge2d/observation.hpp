#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nudge2d/fields.hpp"
#include "nudge2d/subdomain.hpp"

namespace nudge2d {

enum class InterpolantKind {
  kNodalSmooth,    ///< stride-2^p samples refined by the recursive smoother
  kVolumeAverage,  ///< cell averages of the masked field
};

std::string to_string(InterpolantKind kind);
InterpolantKind parse_interpolant_kind(std::string_view name);

struct ObservationConfig {
  SubdomainSpec subdomain{};
  int stride_p = 0;                       ///< data at every 2^p-th node
  InterpolantKind interpolant = InterpolantKind::kNodalSmooth;
  std::optional<int> spectral_cutoff{};   ///< keep max(|kx|,|ky|) <= K

  /// Throws ContractError unless 2^p divides n and the parts are valid.
  void validate(Grid grid) const;
  /// Observation spacing h = 2pi 2^p / n.
  double spacing(Grid grid) const { return grid.dx() * static_cast<double>(1 << stride_p); }
};

/// Samples at nodes (i 2^p, j 2^p); m = n / 2^p values per side.
struct CoarseLattice {
  int m = 0;
  int stride = 1;
  std::vector<double> values;  ///< row-major, y outermost

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * m + i]; }
};

/// Throws ContractError when 2^p does not divide n.
CoarseLattice subsample(const PhysicalField& field, int p);

/// p recursive refinement steps: edge midpoints take the mean of their two
/// endpoints, cell centres the mean of the four corners, existing nodes are
/// kept; periodic at the box edge.
PhysicalField smoother_kp(const CoarseLattice& coarse, int p);

/// Cell average of field * chi over each 2^p x 2^p block of nodes, written
/// back on the block's nodes inside the mask; zero elsewhere.
PhysicalField volume_average_interpolant(const PhysicalField& field, int p, const Mask& mask);

/// Value at each block's centre node (offset 2^p / 2) times chi there,
/// written on the block's nodes inside the mask; zero elsewhere.
PhysicalField nodal_interpolant(const PhysicalField& field, int p, const Mask& mask);

/// Zeroes coefficients with max(|kx|,|ky|) > K.  Requires K >= 1.
SpectralField spectral_project(SpectralField field, int K);

/// Composed observation operator applied to a difference spectrum at time t:
/// FFT( chi_Omega(t) * K_p(subsample_p(FFT^-1 d)) ), then the optional
/// spectral cutoff.  The volume-average interpolant replaces the
/// subsample/smoother pair when configured.
SpectralField observe(const SpectralField& difference, const ObservationConfig& config, double t);

}  // namespace nudge2d
