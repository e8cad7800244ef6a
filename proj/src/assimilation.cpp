#include "nudge2d/assimilation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <string>

#include "nudge2d/errors.hpp"
#include "nudge2d/transforms.hpp"

namespace nudge2d {
namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::set<std::uint64_t> step_indices(const std::vector<double>& times, double dt) {
  std::set<std::uint64_t> out;
  for (double t : times) {
    if (t >= 0.0) out.insert(static_cast<std::uint64_t>(std::llround(t / dt)));
  }
  return out;
}

}  // namespace

ErrorRow error_metrics(const SpectralField& ref_omega, const SpectralField& assim_omega,
                       const std::vector<Mask>& regions) {
  if (!(ref_omega.grid() == assim_omega.grid())) throw ContractError("error_metrics grid mismatch");
  const PhysicalField ref = inverse(ref_omega);
  const PhysicalField diff = inverse(assim_omega) - ref;

  const double ref_l2 = l2_norm(ref);
  const double ref_linf = linf_norm(ref);
  if (ref_l2 == 0.0 || ref_linf == 0.0) {
    throw DegenerateError("reference field vanishes; relative errors undefined");
  }
  ErrorRow row;
  row.rel_l2 = l2_norm(diff) / ref_l2;
  row.rel_linf = linf_norm(diff) / ref_linf;
  row.rel_l2_regions.reserve(regions.size());
  for (const Mask& m : regions) {
    const double den = masked_l2_norm(ref, m);
    if (den == 0.0) throw DegenerateError("reference field vanishes on an error region");
    row.rel_l2_regions.push_back(masked_l2_norm(diff, m) / den);
  }
  return row;
}

NudgedStepper::NudgedStepper(const SolverConfig& config, SpectralField forcing,
                             NudgingParams params)
    : integrator_(config, std::move(forcing)),
      params_(std::move(params)),
      ref_rhs_(config.grid),
      assim_rhs_(config.grid) {
  if (!(params_.mu >= 0.0)) throw ContractError("nudging requires mu >= 0");
  params_.observation.validate(config.grid);
}

NudgedStepper::NudgedStepper(const SolverConfig& config, NudgingParams params)
    : NudgedStepper(config, build_forcing(config.forcing, config.grid), std::move(params)) {}

void NudgedStepper::step(SolverState& ref, SolverState& assim, double t) {
  if (ref.step_count != assim.step_count || ref.time != assim.time) {
    throw ContractError("reference and assimilated clocks differ");
  }
  integrator_.explicit_rhs(ref.omega, ref_rhs_);
  integrator_.explicit_rhs(assim.omega, assim_rhs_);
  if (params_.mu != 0.0) {
    SpectralField nudge = observe(assim.omega - ref.omega, params_.observation, t);
    project_state(nudge);
    assim_rhs_.axpy(-params_.mu, nudge);
  }
  integrator_.advance(ref, ref_rhs_);
  integrator_.advance(assim, assim_rhs_);
}

std::pair<SolverState, SolverState> nudged_step(SolverState ref, SolverState assim,
                                                const NudgingParams& params,
                                                const SolverConfig& config, double t) {
  NudgedStepper stepper(config, params);
  stepper.step(ref, assim, t);
  return {std::move(ref), std::move(assim)};
}

ErrorSeries run_twin(const TwinExperiment& exp, const TwinSinks& sinks) {
  exp.config.validate();
  const Grid grid = exp.config.grid;
  if (!(exp.reference.grid() == grid)) throw ContractError("reference grid differs from config grid");
  if (!(exp.horizon >= 0.0)) throw ContractError("twin horizon must be >= 0");
  if (!(exp.sample_interval > 0.0)) throw ContractError("sample interval must be > 0");
  for (const auto& r : exp.regions) r.validate();

  const double dt = exp.config.dt;
  const auto total = static_cast<std::uint64_t>(std::llround(exp.horizon / dt));
  const auto every = std::max<std::uint64_t>(1, std::llround(exp.sample_interval / dt));
  const auto snapshot_steps = step_indices(exp.snapshot_times, dt);
  const auto mask_steps = step_indices(exp.mask_times, dt);

  SolverState ref = exp.reference;
  SolverState assim(grid);
  assim.step_count = ref.step_count;
  assim.time = ref.time;

  NudgedStepper stepper(exp.config, exp.nudging);
  ErrorSeries series;

  auto region_masks = [&](double t) {
    std::vector<Mask> masks;
    masks.reserve(exp.regions.size());
    for (const auto& r : exp.regions) masks.push_back(mask_at(r, grid, t));
    return masks;
  };

  auto observe_step = [&](std::uint64_t k) {
    const double t = static_cast<double>(k) * dt;
    if (k % every == 0 || k == total) {
      ErrorRow row = error_metrics(ref.omega, assim.omega, region_masks(t));
      row.t = t;
      if (sinks.on_row) sinks.on_row(row);
      series.rows.push_back(std::move(row));
    }
    if (sinks.on_snapshot && snapshot_steps.count(k) != 0) {
      const PhysicalField r = inverse(ref.omega);
      const PhysicalField a = inverse(assim.omega);
      sinks.on_snapshot(t, r, a, a - r);
    }
    if (sinks.on_mask && mask_steps.count(k) != 0) {
      sinks.on_mask(t, mask_at(exp.nudging.observation.subdomain, grid, t));
    }
  };

  observe_step(0);
  for (std::uint64_t k = 0; k < total; ++k) {
    stepper.step(ref, assim, static_cast<double>(k) * dt);
    observe_step(k + 1);
  }
  return series;
}

void write_error_header(std::ostream& os, std::size_t regions) {
  os << "t,rel_l2,rel_linf";
  for (std::size_t i = 0; i < regions; ++i) os << ",rel_l2_region_" << i;
  os << '\n';
}

void write_error_row(std::ostream& os, const ErrorRow& row) {
  os << format_double(row.t) << ',' << format_double(row.rel_l2) << ','
     << format_double(row.rel_linf);
  for (double v : row.rel_l2_regions) os << ',' << format_double(v);
  os << '\n';
}

RateFit fit_rate(const ErrorSeries& series, double t0, double t1) {
  std::vector<double> xs, ys;
  for (const auto& row : series.rows) {
    if (row.t < t0 || row.t > t1) continue;
    if (!(row.rel_l2 > 0.0)) {
      throw NumericalError("error series saturated (non-positive error at t=" +
                           format_double(row.t) + ")");
    }
    xs.push_back(row.t);
    ys.push_back(std::log(row.rel_l2));
  }
  if (xs.size() < 8) {
    throw ContractError("fit_rate needs at least 8 samples in the window, got " +
                        std::to_string(xs.size()));
  }
  const double count = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  RateFit fit;
  fit.samples = xs.size();
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.lambda = -slope;
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

double time_to_threshold(const ErrorSeries& series, double threshold) {
  for (const auto& row : series.rows) {
    if (row.rel_l2 < threshold) return row.t;
  }
  return -1.0;
}

}  // namespace nudge2d
