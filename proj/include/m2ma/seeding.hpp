#pragma once

#include <cstdint>
#include <initializer_list>

namespace m2ma {

using Seed = std::uint64_t;

/// SplitMix64 finalizer. Bijective on 64-bit words with full avalanche.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Folds a list of words into a seed. Distinct (seed, keys...) tuples give
/// statistically independent streams; the order of keys matters.
constexpr Seed derive_seed(Seed seed, std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
  for (std::uint64_t k : keys) {
    h = splitmix64(h ^ splitmix64(k + 0x3c6ef372fe94f82bULL));
  }
  return h;
}

/// First key of every derived seed, so experiments never share streams.
enum class Stream : std::uint64_t {
  slutsky = 1,
  truncation = 2,
  marginal = 3,
  functional = 4,
  reference = 5,
  identity = 6,
  simulate = 7,
};

constexpr std::uint64_t key(Stream s) noexcept { return static_cast<std::uint64_t>(s); }

/// Counter-based 64-bit word for (seed, index, lane).
constexpr std::uint64_t counter_word(Seed seed, std::int64_t index, std::uint64_t lane) noexcept {
  const auto i = static_cast<std::uint64_t>(index);
  return splitmix64(splitmix64(seed ^ splitmix64(i)) + lane * 0xd1b54a32d192ed03ULL);
}

/// Uniform on (0, 1]: k * 2^-53 for k in [1, 2^53].
constexpr double open_closed_unit(std::uint64_t word) noexcept {
  return static_cast<double>((word >> 11) + 1) * 0x1.0p-53;
}

/// Uniform on [0, 1).
constexpr double closed_open_unit(std::uint64_t word) noexcept {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace m2ma
