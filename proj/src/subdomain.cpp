#include "nudge2d/subdomain.hpp"

#include <cmath>

#include "nudge2d/errors.hpp"

namespace nudge2d {
namespace {

double phase_of(double t) { return t - std::floor(t); }

// Trapezoid waveform of the quarter-area loop, in units of n/2.
double loop_waveform(double s) {
  if (s < 0.25) return 4.0 * s;
  if (s < 0.5) return 1.0;
  if (s < 0.75) return 1.0 - 4.0 * (s - 0.5);
  return 0.0;
}

int wrap(long v, int n) {
  const long r = v % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

SubdomainSpec SubdomainSpec::square(double side_fraction) {
  SubdomainSpec s;
  s.kind = SubdomainKind::kStatic;
  s.side_fraction = side_fraction;
  return s;
}

SubdomainSpec SubdomainSpec::disk(double radius) {
  SubdomainSpec s;
  s.kind = SubdomainKind::kDisk;
  s.radius = radius;
  return s;
}

SubdomainSpec SubdomainSpec::mobile_quarter(double period) {
  SubdomainSpec s;
  s.kind = SubdomainKind::kMobileQuarter;
  s.side_fraction = 0.5;
  s.period = period;
  return s;
}

SubdomainSpec SubdomainSpec::mobile_sixteenth(double period) {
  SubdomainSpec s;
  s.kind = SubdomainKind::kMobileSixteenth;
  s.side_fraction = 0.25;
  s.period = period;
  return s;
}

void SubdomainSpec::validate() const {
  switch (kind) {
    case SubdomainKind::kFull:
      return;
    case SubdomainKind::kStatic: {
      if (!(side_fraction > 0.0 && side_fraction <= 1.0)) {
        throw ContractError("static subdomain side_fraction must lie in (0, 1]");
      }
      const double half = 0.5 * side_fraction * kTwoPi;
      const double eps = 1e-12;
      if (center_x - half < -eps || center_x + half > kTwoPi + eps ||
          center_y - half < -eps || center_y + half > kTwoPi + eps) {
        throw ContractError("static subdomain must lie inside the periodic box");
      }
      return;
    }
    case SubdomainKind::kDisk:
      if (!(radius > 0.0 && radius < kTwoPi / 2)) {
        throw ContractError("disk radius must lie in (0, pi)");
      }
      return;
    case SubdomainKind::kMobileQuarter:
    case SubdomainKind::kMobileSixteenth:
      if (!(period > 0.0)) throw ContractError("mobile subdomain period must be > 0");
      return;
  }
}

std::string to_string(SubdomainKind kind) {
  switch (kind) {
    case SubdomainKind::kFull: return "full";
    case SubdomainKind::kStatic: return "static";
    case SubdomainKind::kDisk: return "disk";
    case SubdomainKind::kMobileQuarter: return "mobile_quarter";
    case SubdomainKind::kMobileSixteenth: return "mobile_sixteenth";
  }
  return "unknown";
}

SubdomainKind parse_subdomain_kind(std::string_view name) {
  if (name == "full") return SubdomainKind::kFull;
  if (name == "static") return SubdomainKind::kStatic;
  if (name == "disk") return SubdomainKind::kDisk;
  if (name == "mobile_quarter") return SubdomainKind::kMobileQuarter;
  if (name == "mobile_sixteenth") return SubdomainKind::kMobileSixteenth;
  throw ConfigError("unknown subdomain kind '" + std::string(name) + "'");
}

SubdomainSpec named_subdomain(std::string_view name) {
  if (name == "omega0" || name == "full") return SubdomainSpec::full();
  if (name == "omega1") return SubdomainSpec::square(448.0 / 512.0);
  if (name == "omega2") return SubdomainSpec::square(416.0 / 512.0);
  if (name == "omega3") return SubdomainSpec::square(371.5 / 512.0);
  if (name == "omega4") return SubdomainSpec::square(0.5);
  throw ConfigError("unknown named subdomain '" + std::string(name) + "'");
}

std::pair<double, double> trajectory_quarter(double t, int n) {
  const double s = phase_of(t);
  const double half = 0.5 * n;
  return {half * loop_waveform(s), half * loop_waveform(phase_of(s - 0.25))};
}

std::pair<double, double> trajectory_sixteenth(double t, int n) {
  const double s = phase_of(t);
  const int row = std::min(3, static_cast<int>(std::floor(4.0 * s)));
  const double u = 4.0 * s - row;
  // Tile positions are reached at u = 0, 1/4, 1/2, 3/4; the last one is held
  // until the row ends.
  const double span = 0.75 * n;
  const double travelled = std::min(u * n, span);
  const double x = (row % 2 == 0) ? travelled : span - travelled;
  return {x, 0.25 * n * row};
}

Mask mobile_mask(Grid grid, int side_nodes, const Trajectory& trajectory, double t,
                 double period) {
  const int n = grid.n();
  const auto [fx, fy] = trajectory(t / period, n);
  const int cx = wrap(std::lround(fx), n);
  const int cy = wrap(std::lround(fy), n);
  Mask mask(grid);
  for (int j = 0; j < side_nodes; ++j) {
    for (int i = 0; i < side_nodes; ++i) mask.set((cx + i) % n, (cy + j) % n);
  }
  return mask;
}

Mask mask_at(const SubdomainSpec& spec, Grid grid, double t) {
  spec.validate();
  const int n = grid.n();
  switch (spec.kind) {
    case SubdomainKind::kFull:
      return Mask(grid, true);
    case SubdomainKind::kStatic: {
      // Work in node units; a node's cell centre sits at index + 1/2.
      const double cx = spec.center_x / grid.dx();
      const double cy = spec.center_y / grid.dx();
      const double half = 0.5 * spec.side_fraction * n + 1e-9;
      Mask mask(grid);
      for (int iy = 0; iy < n; ++iy) {
        if (std::abs(iy + 0.5 - cy) > half) continue;
        for (int ix = 0; ix < n; ++ix) {
          if (std::abs(ix + 0.5 - cx) <= half) mask.set(ix, iy);
        }
      }
      return mask;
    }
    case SubdomainKind::kDisk: {
      const double dx = grid.dx();
      const double r2 = spec.radius * spec.radius;
      auto periodic = [](double d) {
        d = std::fmod(std::abs(d), kTwoPi);
        return std::min(d, kTwoPi - d);
      };
      Mask mask(grid);
      for (int iy = 0; iy < n; ++iy) {
        const double dy = periodic((iy + 0.5) * dx - spec.center_y);
        for (int ix = 0; ix < n; ++ix) {
          const double ddx = periodic((ix + 0.5) * dx - spec.center_x);
          if (ddx * ddx + dy * dy <= r2) mask.set(ix, iy);
        }
      }
      return mask;
    }
    case SubdomainKind::kMobileQuarter:
      return mobile_mask(grid, n / 2, trajectory_quarter, t, spec.period);
    case SubdomainKind::kMobileSixteenth:
      return mobile_mask(grid, n / 4, trajectory_sixteenth, t, spec.period);
  }
  return Mask(grid, true);
}

}  // namespace nudge2d
