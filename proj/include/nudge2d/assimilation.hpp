#pragma once

#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "nudge2d/observation.hpp"
#include "nudge2d/solver.hpp"

namespace nudge2d {

struct NudgingParams {
  double mu = 50.0;  ///< relaxation rate (1/time)
  ObservationConfig observation{};
};

/// One sample of the synchronization error.
struct ErrorRow {
  double t = 0.0;
  double rel_l2 = 0.0;
  double rel_linf = 0.0;
  std::vector<double> rel_l2_regions;
};

struct ErrorSeries {
  std::vector<ErrorRow> rows;
};

/// Relative global L2/Linf errors and masked relative L2 per region.
/// Throws DegenerateError if the reference (or its restriction to a region)
/// vanishes.
ErrorRow error_metrics(const SpectralField& ref_omega, const SpectralField& assim_omega,
                       const std::vector<Mask>& regions);

/// Twin clock: both states advance together, the assimilated one with the
/// extra explicit term -mu * observe(assim - ref, t).
class NudgedStepper {
 public:
  NudgedStepper(const SolverConfig& config, NudgingParams params);
  NudgedStepper(const SolverConfig& config, SpectralField forcing, NudgingParams params);

  /// Advances both states one step; t is the observation time (the step's
  /// start time on the twin clock).  Throws ContractError on clock mismatch.
  void step(SolverState& ref, SolverState& assim, double t);

  const Integrator& integrator() const noexcept { return integrator_; }
  const NudgingParams& params() const noexcept { return params_; }

 private:
  Integrator integrator_;
  NudgingParams params_;
  SpectralField ref_rhs_, assim_rhs_;
};

/// Single nudged step (constructs a stepper; loops should reuse one).
std::pair<SolverState, SolverState> nudged_step(SolverState ref, SolverState assim,
                                                const NudgingParams& params,
                                                const SolverConfig& config, double t);

struct TwinExperiment {
  SolverConfig config{};
  SolverState reference{Grid(128)};  ///< post spin-up state
  NudgingParams nudging{};
  double horizon = 0.0;
  double sample_interval = 1.0;
  std::vector<SubdomainSpec> regions{};   ///< masked error regions
  std::vector<double> snapshot_times{};   ///< twin-clock times for field dumps
  std::vector<double> mask_times{};       ///< twin-clock times for mask dumps
};

struct TwinSinks {
  std::function<void(const ErrorRow&)> on_row;
  /// (t, reference, assimilated, difference) in physical space.
  std::function<void(double, const PhysicalField&, const PhysicalField&, const PhysicalField&)>
      on_snapshot;
  std::function<void(double, const Mask&)> on_mask;
};

/// Runs reference and assimilated systems over the horizon from zero
/// assimilated data.  Rows are delivered to the sink as they are produced,
/// so a partial series survives an abort.
ErrorSeries run_twin(const TwinExperiment& experiment, const TwinSinks& sinks = {});

/// CSV header `t,rel_l2,rel_linf,rel_l2_region_0,...`.
void write_error_header(std::ostream& os, std::size_t regions);
void write_error_row(std::ostream& os, const ErrorRow& row);

struct RateFit {
  double lambda = 0.0;     ///< decay rate, -slope of log(rel_l2) vs t
  double r_squared = 0.0;
  std::size_t samples = 0;
};

/// Least squares of log(rel_l2) over rows with t0 <= t <= t1.  Requires at
/// least 8 samples; throws NumericalError if any error in the window is
/// non-positive (series saturated).
RateFit fit_rate(const ErrorSeries& series, double t0, double t1);

/// First sample time with rel_l2 below the threshold, or a negative value.
double time_to_threshold(const ErrorSeries& series, double threshold);

}  // namespace nudge2d
