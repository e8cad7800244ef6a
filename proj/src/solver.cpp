#include "nudge2d/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nudge2d/errors.hpp"

namespace nudge2d {

void SolverConfig::validate() const {
  if (!(nu > 0.0)) throw ContractError("solver requires nu > 0");
  if (!(dt > 0.0)) throw ContractError("solver requires dt > 0");
  if (!(gevrey_sigma >= 0.0)) throw ContractError("gevrey sigma must be >= 0");
}

SolverState::SolverState(SpectralField omega0, double t, std::uint64_t step)
    : omega(std::move(omega0)),
      history{SpectralField(omega.grid()), SpectralField(omega.grid())},
      time(t),
      step_count(step) {
  project_state(omega);
}

std::array<double, 3> ab_weights(int history_len) noexcept {
  switch (history_len) {
    case 0: return {1.0, 0.0, 0.0};
    case 1: return {1.5, -0.5, 0.0};
    default: return {23.0 / 12.0, -16.0 / 12.0, 5.0 / 12.0};
  }
}

Integrator::Integrator(const SolverConfig& config, SpectralField forcing)
    : config_(config),
      forcing_(std::move(forcing)),
      advection_(config.grid),
      scratch_(config.grid) {
  config_.validate();
  if (!(forcing_.grid() == config_.grid)) throw ContractError("forcing grid differs from solver grid");
  const Grid& g = config_.grid;
  const int n = g.n();
  const int cols = g.columns();
  e1_.resize(g.modes());
  e2_.resize(g.modes());
  e3_.resize(g.modes());
  e_half_.resize(g.modes());
  for (int iy = 0; iy < n; ++iy) {
    const int ky = g.wavenumber(iy);
    for (int kx = 0; kx < cols; ++kx) {
      const std::size_t i = static_cast<std::size_t>(iy) * cols + kx;
      const double rate = config_.nu * static_cast<double>(kx * kx + ky * ky);
      e1_[i] = std::exp(-rate * config_.dt);
      e2_[i] = std::exp(-2.0 * rate * config_.dt);
      e3_[i] = std::exp(-3.0 * rate * config_.dt);
      e_half_[i] = std::exp(-0.5 * rate * config_.dt);
    }
  }
}

Integrator::Integrator(const SolverConfig& config)
    : Integrator(config, build_forcing(config.forcing, config.grid)) {}

void Integrator::explicit_rhs(const SpectralField& omega, SpectralField& out) {
  advection_.evaluate(omega, out);
  auto o = out.data();
  auto f = forcing_.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = f[i] - o[i];
  project_state(out);
}

SpectralField Integrator::explicit_rhs(const SpectralField& omega) {
  SpectralField out(omega.grid());
  explicit_rhs(omega, out);
  return out;
}

void Integrator::step(SolverState& state) {
  if (config_.startup == Startup::kRungeKutta4 && state.history_len < 2) {
    rk4_step(state);
    return;
  }
  explicit_rhs(state.omega, scratch_);
  advance(state, scratch_);
}

void Integrator::advance(SolverState& state, const SpectralField& rhs_now) {
  if (!(state.grid() == config_.grid) || !(rhs_now.grid() == config_.grid)) {
    throw ContractError("state grid differs from solver grid");
  }
  const auto beta = ab_weights(state.history_len);
  const double dt = config_.dt;
  auto w = state.omega.data();
  auto r0 = rhs_now.data();
  auto r1 = state.history[0].data();
  auto r2 = state.history[1].data();
  for (std::size_t i = 0; i < w.size(); ++i) {
    Complex acc = beta[0] * e1_[i] * r0[i];
    if (state.history_len >= 1) acc += beta[1] * e2_[i] * r1[i];
    if (state.history_len >= 2) acc += beta[2] * e3_[i] * r2[i];
    w[i] = e1_[i] * w[i] + dt * acc;
  }
  finish(state, rhs_now);
}

void Integrator::rk4_step(SolverState& state) {
  const Grid& g = config_.grid;
  const double dt = config_.dt;
  SpectralField k1 = explicit_rhs(state.omega);
  SpectralField stage(g);

  auto w = state.omega.data();
  auto s = stage.data();
  auto a1 = k1.data();
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = e_half_[i] * (w[i] + 0.5 * dt * a1[i]);
  SpectralField k2 = explicit_rhs(stage);
  auto a2 = k2.data();
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = e_half_[i] * w[i] + 0.5 * dt * a2[i];
  SpectralField k3 = explicit_rhs(stage);
  auto a3 = k3.data();
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = e1_[i] * w[i] + dt * e_half_[i] * a3[i];
  SpectralField k4 = explicit_rhs(stage);
  auto a4 = k4.data();
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = e1_[i] * w[i] +
           dt / 6.0 * (e1_[i] * a1[i] + 2.0 * e_half_[i] * (a2[i] + a3[i]) + a4[i]);
  }
  finish(state, k1);
}

void Integrator::finish(SolverState& state, const SpectralField& rhs_now) {
  project_state(state.omega);
  std::swap(state.history[0], state.history[1]);
  state.history[0] = rhs_now;
  if (state.history_len < 2) ++state.history_len;
  ++state.step_count;
  state.time = static_cast<double>(state.step_count) * config_.dt;
  if (!state.omega.all_finite()) {
    std::ostringstream msg;
    msg << "non-finite vorticity at step " << state.step_count << " (t=" << state.time
        << "); the configuration is likely under-resolved";
    throw BlowUpError(state.step_count, msg.str());
  }
}

SpectralField rhs_explicit(const SolverState& state, const SpectralField& f) {
  SpectralField out = nonlinear_term(state.omega);
  out *= -1.0;
  out += f;
  project_state(out);
  return out;
}

SolverState step(SolverState state, const SolverConfig& config, const SpectralField& f) {
  Integrator integrator(config, f);
  integrator.step(state);
  return state;
}

Diagnostics diagnostics(const SpectralField& omega, double sigma) {
  if (!(sigma >= 0.0)) throw ContractError("gevrey sigma must be >= 0");
  const double area = omega.grid().length() * omega.grid().length();
  Diagnostics d;
  d.energy = 0.5 * area * weighted_power(omega, [](int kx, int ky) {
    const int k2 = kx * kx + ky * ky;
    return k2 == 0 ? 0.0 : 1.0 / static_cast<double>(k2);
  });
  d.enstrophy = area * weighted_power(omega, [](int, int) { return 1.0; });
  d.palinstrophy = area * weighted_power(omega, [](int kx, int ky) {
    return static_cast<double>(kx * kx + ky * ky);
  });
  // |k|^2 e^{2 sigma |k|} |u_k|^2 = e^{2 sigma |k|} |omega_k|^2.
  double largest_k = 0.0;
  const double g2 = area * weighted_power(omega, [&](int kx, int ky) {
    const double k = std::sqrt(static_cast<double>(kx * kx + ky * ky));
    if (k == 0.0) return 0.0;
    largest_k = std::max(largest_k, k);
    return std::exp(2.0 * sigma * k);
  });
  if (!std::isfinite(g2)) {
    std::ostringstream msg;
    msg << "gevrey norm overflow for sigma=" << sigma << "; largest contributing |k|="
        << largest_k;
    throw NumericalError(msg.str());
  }
  d.gevrey_norm = std::sqrt(g2);
  return d;
}

SolverState resume(const SolverConfig& config, SolverState state, double end_time,
                   const SpinupSinks& sinks) {
  config.validate();
  if (!(state.grid() == config.grid)) throw ContractError("state grid differs from config grid");
  const auto target = static_cast<std::uint64_t>(std::llround(end_time / config.dt));
  Integrator integrator(config);

  auto emit = [&](bool force) {
    if (!sinks.on_diagnostics) return;
    const bool due = sinks.diagnostics_every > 0 && state.step_count % sinks.diagnostics_every == 0;
    if (force || due) sinks.on_diagnostics(state.time, diagnostics(state, config.gevrey_sigma));
  };

  emit(state.step_count == 0);
  while (state.step_count < target) {
    integrator.step(state);
    emit(state.step_count == target);
    if (sinks.on_checkpoint && sinks.checkpoint_every > 0 &&
        state.step_count % sinks.checkpoint_every == 0) {
      sinks.on_checkpoint(state);
    }
  }
  return state;
}

SolverState spinup(const SolverConfig& config, double duration, const SpinupSinks& sinks) {
  if (!(duration >= 0.0)) throw ContractError("spinup duration must be >= 0");
  return resume(config, SolverState(config.grid), duration, sinks);
}

}  // namespace nudge2d
