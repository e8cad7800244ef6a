#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace nudge2d {

/// 64-bit FNV-1a over raw bytes; stable across platforms and runs.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ull);

/// Per-component seed derived from a master seed and a component name.
std::uint64_t derive_seed(std::uint64_t master, std::string_view component);

/// Seed derived from a master seed and a tuple of integer coordinates,
/// e.g. (K, sample index).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords);

}  // namespace nudge2d
