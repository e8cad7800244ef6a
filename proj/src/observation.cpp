#include "nudge2d/observation.hpp"

#include <algorithm>
#include <string>

#include "nudge2d/errors.hpp"
#include "nudge2d/transforms.hpp"

namespace nudge2d {
namespace {

int stride_for(int n, int p) {
  if (p < 0 || p > 30) throw ContractError("stride exponent p must be >= 0");
  const int stride = 1 << p;
  if (stride > n || n % stride != 0) {
    throw ContractError("stride 2^" + std::to_string(p) + " does not divide grid size " +
                        std::to_string(n));
  }
  return stride;
}

}  // namespace

std::string to_string(InterpolantKind kind) {
  return kind == InterpolantKind::kNodalSmooth ? "nodal_smooth" : "volume_average";
}

InterpolantKind parse_interpolant_kind(std::string_view name) {
  if (name == "nodal_smooth") return InterpolantKind::kNodalSmooth;
  if (name == "volume_average") return InterpolantKind::kVolumeAverage;
  throw ConfigError("unknown interpolant '" + std::string(name) + "'");
}

void ObservationConfig::validate(Grid grid) const {
  subdomain.validate();
  stride_for(grid.n(), stride_p);
  if (spectral_cutoff && *spectral_cutoff < 1) {
    throw ContractError("spectral cutoff must be >= 1");
  }
}

CoarseLattice subsample(const PhysicalField& field, int p) {
  const int n = field.n();
  const int stride = stride_for(n, p);
  CoarseLattice coarse;
  coarse.m = n / stride;
  coarse.stride = stride;
  coarse.values.resize(static_cast<std::size_t>(coarse.m) * coarse.m);
  for (int j = 0; j < coarse.m; ++j) {
    for (int i = 0; i < coarse.m; ++i) {
      coarse.values[static_cast<std::size_t>(j) * coarse.m + i] = field.at(i * stride, j * stride);
    }
  }
  return coarse;
}

PhysicalField smoother_kp(const CoarseLattice& coarse, int p) {
  if (p < 0 || coarse.stride != (1 << p)) {
    throw ContractError("coarse lattice stride does not match smoother depth p");
  }
  const int n = coarse.m * coarse.stride;
  PhysicalField out{Grid(n)};
  for (int j = 0; j < coarse.m; ++j) {
    for (int i = 0; i < coarse.m; ++i) out.at(i * coarse.stride, j * coarse.stride) = coarse.at(i, j);
  }
  for (int s = coarse.stride; s >= 2; s /= 2) {
    const int h = s / 2;
    for (int j = 0; j < n; j += s) {
      const int jn = (j + s) % n;
      for (int i = 0; i < n; i += s) {
        const int in = (i + s) % n;
        // Cell corners: a lower-left, b lower-right, c upper-right, d upper-left.
        const double a = out.at(i, j);
        const double b = out.at(in, j);
        const double c = out.at(in, jn);
        const double d = out.at(i, jn);
        out.at(i + h, j) = (a + b) / 2;
        out.at(i, j + h) = (a + d) / 2;
        out.at(i + h, j + h) = (a + b + c + d) / 4;
      }
    }
  }
  return out;
}

PhysicalField volume_average_interpolant(const PhysicalField& field, int p, const Mask& mask) {
  if (!(field.grid() == mask.grid())) throw ContractError("grid mismatch in volume interpolant");
  const int n = field.n();
  const int s = stride_for(n, p);
  const double inv_cell = 1.0 / (static_cast<double>(s) * s);
  PhysicalField out(field.grid());
  for (int cj = 0; cj < n; cj += s) {
    for (int ci = 0; ci < n; ci += s) {
      double sum = 0.0;
      bool touched = false;
      for (int j = cj; j < cj + s; ++j) {
        for (int i = ci; i < ci + s; ++i) {
          if (mask.at(i, j)) {
            sum += field.at(i, j);
            touched = true;
          }
        }
      }
      if (!touched) continue;
      const double mean = sum * inv_cell;
      for (int j = cj; j < cj + s; ++j) {
        for (int i = ci; i < ci + s; ++i) {
          if (mask.at(i, j)) out.at(i, j) = mean;
        }
      }
    }
  }
  return out;
}

PhysicalField nodal_interpolant(const PhysicalField& field, int p, const Mask& mask) {
  if (!(field.grid() == mask.grid())) throw ContractError("grid mismatch in nodal interpolant");
  const int n = field.n();
  const int s = stride_for(n, p);
  const int offset = s / 2;
  PhysicalField out(field.grid());
  for (int cj = 0; cj < n; cj += s) {
    for (int ci = 0; ci < n; ci += s) {
      const int xi = ci + offset;
      const int yi = cj + offset;
      if (!mask.at(xi, yi)) continue;
      const double value = field.at(xi, yi);
      for (int j = cj; j < cj + s; ++j) {
        for (int i = ci; i < ci + s; ++i) {
          if (mask.at(i, j)) out.at(i, j) = value;
        }
      }
    }
  }
  return out;
}

SpectralField spectral_project(SpectralField field, int K) {
  if (K < 1) throw ContractError("spectral cutoff K must be >= 1");
  const Grid& g = field.grid();
  const int n = g.n();
  for (int iy = 0; iy < n; ++iy) {
    const int ky = g.wavenumber(iy);
    for (int kx = 0; kx < g.columns(); ++kx) {
      if (std::max(kx, ky < 0 ? -ky : ky) > K) field.stored(iy, kx) = 0.0;
    }
  }
  return field;
}

SpectralField observe(const SpectralField& difference, const ObservationConfig& config, double t) {
  const Grid grid = difference.grid();
  config.validate(grid);
  if (config.subdomain.kind == SubdomainKind::kFull && config.stride_p == 0 &&
      !config.spectral_cutoff) {
    // Every factor is the identity on the grid.
    return difference;
  }
  const Mask mask = mask_at(config.subdomain, grid, t);
  const PhysicalField physical = inverse(difference);

  PhysicalField observed = config.interpolant == InterpolantKind::kNodalSmooth
                               ? apply_mask(smoother_kp(subsample(physical, config.stride_p),
                                                        config.stride_p),
                                            mask)
                               : volume_average_interpolant(physical, config.stride_p, mask);
  SpectralField out = forward(observed);
  if (config.spectral_cutoff) out = spectral_project(std::move(out), *config.spectral_cutoff);
  return out;
}

}  // namespace nudge2d
