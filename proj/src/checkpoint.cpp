#include "nudge2d/checkpoint.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "binary_io.hpp"
#include "nudge2d/errors.hpp"

namespace nudge2d {
namespace {

void put_spectrum(std::ostream& os, const SpectralField& f) {
  const int n = f.n();
  for (int iy = 0; iy < n; ++iy) {
    const int ky = f.grid().wavenumber(iy);
    for (int ix = 0; ix < n; ++ix) {
      const Complex c = f.coeff(f.grid().wavenumber(ix), ky);
      detail::put_f64(os, c.real());
      detail::put_f64(os, c.imag());
    }
  }
}

SpectralField get_spectrum(std::istream& is, Grid grid) {
  const int n = grid.n();
  SpectralField f(grid);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const double re = detail::get_f64(is, "checkpoint spectrum");
      const double im = detail::get_f64(is, "checkpoint spectrum");
      if (ix <= n / 2) f.stored(iy, ix) = Complex(re, im);
    }
  }
  return f;
}

}  // namespace

void write_checkpoint(std::ostream& os, const SolverState& state, const SolverConfig& config) {
  if (!(state.grid() == config.grid)) throw ContractError("checkpoint state/config grid mismatch");
  os.write("NCKP", 4);
  detail::put_le<std::uint32_t>(os, kCheckpointVersion);
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(state.grid().n()));
  detail::put_le<std::uint64_t>(os, state.step_count);
  detail::put_f64(os, state.time);
  detail::put_f64(os, config.nu);
  detail::put_f64(os, config.dt);
  detail::put_le<std::uint64_t>(os, config.forcing.seed);
  put_spectrum(os, state.omega);
  put_spectrum(os, state.history[0]);
  put_spectrum(os, state.history[1]);
  if (!os) throw FormatError("failed writing checkpoint stream");
}

Checkpoint read_checkpoint(std::istream& is) {
  detail::expect_magic(is, "NCKP");
  CheckpointHeader h;
  h.version = detail::get_le<std::uint32_t>(is, "checkpoint version");
  if (h.version != kCheckpointVersion) {
    throw FormatError("unsupported checkpoint version " + std::to_string(h.version));
  }
  const auto n = detail::get_le<std::uint32_t>(is, "checkpoint size");
  if (n < 8 || n > (1u << 16) || (n & (n - 1)) != 0) {
    throw FormatError("checkpoint grid size " + std::to_string(n) + " is not a power of two >= 8");
  }
  h.n = static_cast<int>(n);
  h.step = detail::get_le<std::uint64_t>(is, "checkpoint step");
  h.time = detail::get_f64(is, "checkpoint time");
  h.nu = detail::get_f64(is, "checkpoint nu");
  h.dt = detail::get_f64(is, "checkpoint dt");
  h.seed = detail::get_le<std::uint64_t>(is, "checkpoint seed");

  Grid grid(h.n);
  SolverState state(grid);
  state.omega = get_spectrum(is, grid);
  state.history[0] = get_spectrum(is, grid);
  state.history[1] = get_spectrum(is, grid);
  state.history_len = static_cast<int>(std::min<std::uint64_t>(h.step, 2));
  state.step_count = h.step;
  state.time = h.time;
  return Checkpoint{h, std::move(state)};
}

void write_checkpoint(const std::filesystem::path& path, const SolverState& state,
                      const SolverConfig& config) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  write_checkpoint(os, state, config);
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  return read_checkpoint(is);
}

}  // namespace nudge2d
