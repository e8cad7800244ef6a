#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>

#include "nudge2d/fields.hpp"

namespace nudge2d {

enum class SubdomainKind {
  kFull,
  kStatic,            ///< axis-aligned square, fixed in time
  kDisk,              ///< fixed disk (thick-set experiments)
  kMobileQuarter,     ///< n/2 x n/2 nodes on the counterclockwise loop
  kMobileSixteenth,   ///< n/4 x n/4 nodes on the serpentine scan
};

struct SubdomainSpec {
  SubdomainKind kind = SubdomainKind::kFull;
  double side_fraction = 1.0;  ///< square side / domain side (static)
  double radius = 1.0;         ///< disk radius in domain units
  double center_x = kTwoPi / 2;
  double center_y = kTwoPi / 2;
  double period = 1.0;         ///< trajectory period in time units (mobile)

  static SubdomainSpec full() { return {}; }
  static SubdomainSpec square(double side_fraction);
  static SubdomainSpec disk(double radius);
  static SubdomainSpec mobile_quarter(double period = 1.0);
  static SubdomainSpec mobile_sixteenth(double period = 1.0);

  bool is_mobile() const noexcept {
    return kind == SubdomainKind::kMobileQuarter || kind == SubdomainKind::kMobileSixteenth;
  }
  /// Throws ContractError for out-of-range parameters.
  void validate() const;
};

std::string to_string(SubdomainKind kind);
/// Accepts full, static, disk, mobile_quarter, mobile_sixteenth.
SubdomainKind parse_subdomain_kind(std::string_view name);

/// Named centred squares of the reference experiments (omega1..omega4);
/// their area fractions are 0.7656, 0.6602, 0.5265 and 0.25 at n = 512.
SubdomainSpec named_subdomain(std::string_view name);

/// Lower-left corner of the moving square, in node units, before rounding.
using Trajectory = std::function<std::pair<double, double>(double t, int n)>;

/// Counterclockwise loop of period 1: n_x ramps 0 -> n/2 on [0,1/4], holds,
/// ramps back on [1/2,3/4], holds 0; n_y is the same waveform a quarter
/// period later.
std::pair<double, double> trajectory_quarter(double t, int n);

/// Serpentine scan of the 4 x 4 tile lattice; one row per quarter period,
/// alternating direction, with n_y jumping between rows.  Within a row n_x
/// moves at n per quarter period, reaching the four tile positions at equal
/// intervals, and holds at the last tile until the row ends.
std::pair<double, double> trajectory_sixteenth(double t, int n);

/// Node indicator of the region at time t.  Static squares contain the nodes
/// whose cell centre ((i + 1/2) dx) lies in the closed square; mobile squares
/// snap their corner to the nearest node and wrap periodically.
Mask mask_at(const SubdomainSpec& spec, Grid grid, double t);

/// As mask_at but with an explicit trajectory for mobile kinds.
Mask mobile_mask(Grid grid, int side_nodes, const Trajectory& trajectory, double t,
                 double period);

}  // namespace nudge2d
