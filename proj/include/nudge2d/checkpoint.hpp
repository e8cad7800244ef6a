#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "nudge2d/solver.hpp"

namespace nudge2d {

// NCKP layout (little-endian):
//   "NCKP", u32 version, u32 n, u64 step, f64 time, f64 nu, f64 dt, u64 seed,
//   then omega, history[0], history[1] as full n x n spectra (ky index
//   outermost, FFT order on both axes), each coefficient as re, im float64.
// The history length is implied by the step counter (min(step, 2)).

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct CheckpointHeader {
  std::uint32_t version = kCheckpointVersion;
  int n = 0;
  std::uint64_t step = 0;
  double time = 0.0;
  double nu = 0.0;
  double dt = 0.0;
  std::uint64_t seed = 0;
};

struct Checkpoint {
  CheckpointHeader header;
  SolverState state;
};

void write_checkpoint(std::ostream& os, const SolverState& state, const SolverConfig& config);
Checkpoint read_checkpoint(std::istream& is);

void write_checkpoint(const std::filesystem::path& path, const SolverState& state,
                      const SolverConfig& config);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace nudge2d
