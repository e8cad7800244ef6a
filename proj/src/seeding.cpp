#include "nudge2d/seeding.hpp"

namespace nudge2d {
namespace {

std::uint64_t mix_word(std::uint64_t h, std::uint64_t word) {
  for (int i = 0; i < 8; ++i) {
    h ^= (word >> (8 * i)) & 0xFFu;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view component) {
  return fnv1a64(component, mix_word(0xcbf29ce484222325ull, master));
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords) {
  std::uint64_t h = mix_word(0xcbf29ce484222325ull, master);
  for (std::uint64_t c : coords) h = mix_word(h, c);
  return h;
}

}  // namespace nudge2d
