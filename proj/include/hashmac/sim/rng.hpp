#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace hashmac {

/// Independent generator streams derived from one scenario seed, so that e.g.
/// traffic draws do not depend on how many channel draws a mode makes.
enum class RngStream : std::uint32_t { Macs = 1, AttackerMacs, Channel, Traffic, Attacks, Phases };

inline std::mt19937_64 make_rng(std::uint64_t seed, RngStream stream, std::uint64_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform integer in [0, bound) from the raw 64-bit output. std::uniform_*
/// distributions are implementation-defined, which would break byte-stable
/// reports across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace hashmac
