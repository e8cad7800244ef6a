#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nudge2d/fields.hpp"

namespace nudge2d {

/// Ratios above this are treated as numerically saturated.
inline constexpr double kSaturatedRatio = 1e15;

/// Zero-mean real field with seeded standard normal complex amplitudes on
/// max(|kx|,|ky|) <= K, normalized to unit L2.  Requires 1 <= K < n/2.
SpectralField sample_bandlimited(int K, std::uint64_t seed, Grid grid);

/// ||f||^2 / ||f||^2_{L2(mask)} with discrete norms.  Throws DegenerateError
/// on an empty mask or a vanishing masked norm.
double thickness_ratio(const SpectralField& f, const Mask& mask);

/// Supremum of thickness_ratio over zero-mean fields band-limited to
/// max(|kx|,|ky|) <= K: the inverse of the smallest eigenvalue of the
/// restriction Gram matrix.  Returns +inf when that eigenvalue is not
/// positive.
double extremal_thickness_ratio(const Mask& mask, int K);

enum class RatioEstimator {
  kSampled,   ///< max over seeded random samples (a lower bound)
  kExtremal,  ///< exact supremum from the eigenproblem
};

std::string to_string(RatioEstimator estimator);
RatioEstimator parse_ratio_estimator(std::string_view name);

struct FitPoint {
  int K = 0;
  double max_ratio = 0.0;
  bool saturated = false;  ///< ratio above kSaturatedRatio; excluded from the fit
};

struct FitResult {
  double slope = 0.0;       ///< growth of log(max ratio) per unit K
  double intercept = 0.0;
  double r_squared = 0.0;
  double max_ratio_observed = 0.0;  ///< largest unsaturated ratio
  std::size_t samples = 0;          ///< points used in the fit
  RatioEstimator estimator = RatioEstimator::kSampled;
  std::vector<FitPoint> points;
};

/// For each K, the max thickness ratio over samples_per_K fields (sample
/// seeds derived from (seed, K, index)), or the extremal ratio; then least
/// squares of log(max ratio) against K over the unsaturated points.
/// K_list must be strictly increasing with every K in [1, n/2).
FitResult fit_spectral_constant(const Mask& mask, const std::vector<int>& K_list,
                                int samples_per_K, std::uint64_t seed,
                                RatioEstimator estimator = RatioEstimator::kSampled);

/// CSV `K,max_ratio,log_max_ratio` (saturated points included).
void write_fit_csv(std::ostream& os, const FitResult& fit);
/// One-line record `{"estimator": ..., "slope": ..., ...}`.
void write_fit_summary(std::ostream& os, const FitResult& fit);

/// H^s norm computed spectrally: L * sqrt(sum (1 + |k|^2)^s |coeff|^2).
double sobolev_norm(const SpectralField& f, int s);

enum class ApproxKind { kVolume, kNodal };

std::string to_string(ApproxKind kind);
ApproxKind parse_approx_kind(std::string_view name);

/// ||I f - f||_{L2(mask)} / (h ||f||_{H1}) for the volume interpolant and
/// ||I f - f||_{L2(mask)} / (h^2 ||f||_{H2}) for the nodal one.  Zero when
/// the error vanishes (constants); throws DegenerateError if the norm in the
/// denominator vanishes while the error does not.
double approximation_ratio(ApproxKind kind, const SpectralField& f, int p, const Mask& mask);

struct ApproxRow {
  int p = 0;
  double h = 0.0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
};

struct ApproxTable {
  ApproxKind kind = ApproxKind::kVolume;
  int band = 0;
  int ensemble = 0;
  std::vector<ApproxRow> rows;
  double c0 = 0.0;  ///< max over all rows

  /// max_ratio over min_ratio across rows (1 for a single row).
  double spread() const;
};

/// Ratios over an ensemble of `ensemble` band-limited fields (band K, seeds
/// derived from (seed, index)) for every p in p_list.
ApproxTable verify_approx_inequality(ApproxKind kind, const std::vector<int>& p_list,
                                     const Mask& mask, std::uint64_t seed, int ensemble = 20,
                                     int band = 8);

/// CSV `p,h,max_ratio,mean_ratio`.
void write_approx_csv(std::ostream& os, const ApproxTable& table);

}  // namespace nudge2d
