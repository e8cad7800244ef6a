#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "nudge2d/fields.hpp"
#include "nudge2d/forcing.hpp"
#include "nudge2d/spectral_ops.hpp"

namespace nudge2d {

/// How the multistep history is filled during the first two steps.
enum class Startup {
  kEulerAb2,     ///< forward Euler, then AB2; no extra right-hand sides
  kRungeKutta4,  ///< integrating-factor RK4 steps until AB3 history is full
};

struct SolverConfig {
  Grid grid{128};
  double nu = 1e-3;
  double dt = 0.01;
  ForcingSpec forcing{};
  double gevrey_sigma = 0.0;
  Startup startup = Startup::kEulerAb2;

  /// Throws ContractError unless nu > 0, dt > 0 and sigma >= 0.
  void validate() const;
};

/// Vorticity spectrum plus the un-multiplied explicit right-hand sides of the
/// previous steps.  history[0] is one step old, history[1] two steps old.
struct SolverState {
  SpectralField omega;
  std::array<SpectralField, 2> history;
  int history_len = 0;
  double time = 0.0;
  std::uint64_t step_count = 0;

  explicit SolverState(Grid grid) : omega(grid), history{SpectralField(grid), SpectralField(grid)} {}
  SolverState(SpectralField omega0, double t = 0.0, std::uint64_t step = 0);

  const Grid& grid() const noexcept { return omega.grid(); }
};

/// Adams-Bashforth weights for the given history length (0, 1 or 2).
std::array<double, 3> ab_weights(int history_len) noexcept;

/// Integrating-factor Adams-Bashforth stepper for one configuration.
///
/// Each mode advances as
///   w <- E w + dt * sum_j beta_j E^(j+1) r_j,   E = exp(-nu |k|^2 dt),
/// where r_j is the explicit right-hand side j steps ago.
class Integrator {
 public:
  Integrator(const SolverConfig& config, SpectralField forcing);
  explicit Integrator(const SolverConfig& config);

  const SolverConfig& config() const noexcept { return config_; }
  const SpectralField& forcing() const noexcept { return forcing_; }

  /// -u.grad(omega) + f, dealiased.
  void explicit_rhs(const SpectralField& omega, SpectralField& out);
  SpectralField explicit_rhs(const SpectralField& omega);

  /// One step of the unforced-by-data system.
  void step(SolverState& state);
  /// One multistep update with a caller-supplied explicit right-hand side
  /// evaluated at the state's current time.  Always uses the Euler/AB2 ramp.
  void advance(SolverState& state, const SpectralField& rhs_now);

 private:
  void rk4_step(SolverState& state);
  void finish(SolverState& state, const SpectralField& rhs_now);

  SolverConfig config_;
  SpectralField forcing_;
  std::vector<double> e1_, e2_, e3_, e_half_;
  AdvectionWorkspace advection_;
  SpectralField scratch_;
};

/// Explicit right-hand side of a state: -nonlinear_term(omega) + f.
SpectralField rhs_explicit(const SolverState& state, const SpectralField& f);

/// Convenience single step; builds a fresh Integrator (loops should reuse one).
SolverState step(SolverState state, const SolverConfig& config, const SpectralField& f);

struct Diagnostics {
  double energy = 0.0;
  double enstrophy = 0.0;
  double palinstrophy = 0.0;
  double gevrey_norm = 0.0;
};

/// energy = |u|^2/2, enstrophy = |omega|^2, palinstrophy = |grad omega|^2 and
/// gevrey_norm = |A^{1/2} e^{sigma A^{1/2}} u|.  Throws NumericalError naming
/// the largest contributing |k| if the Gevrey weight overflows.
Diagnostics diagnostics(const SpectralField& omega, double sigma);
inline Diagnostics diagnostics(const SolverState& state, double sigma) {
  return diagnostics(state.omega, sigma);
}

struct SpinupSinks {
  std::uint64_t diagnostics_every = 0;  ///< steps; 0 = first and last only
  std::function<void(double t, const Diagnostics&)> on_diagnostics;
  std::uint64_t checkpoint_every = 0;   ///< steps; 0 = never
  std::function<void(const SolverState&)> on_checkpoint;
};

/// Integrates from omega = 0 for duration T.  Throws BlowUpError carrying
/// the offending step if the state becomes non-finite.
SolverState spinup(const SolverConfig& config, double duration, const SpinupSinks& sinks = {});

/// Continues a state until its step counter reaches round(end_time / dt).
SolverState resume(const SolverConfig& config, SolverState state, double end_time,
                   const SpinupSinks& sinks = {});

}  // namespace nudge2d
