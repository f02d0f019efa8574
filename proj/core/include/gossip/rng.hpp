#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gossip {

__extension__ using uint128_t = unsigned __int128;

/// splitmix64 finalizer. Used to derive independent substream seeds from a
/// master seed so that adding a new consumer never shifts existing draws.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Purposes for substream derivation. Values are part of the reproducibility
/// contract: never renumber.
enum class Stream : std::uint64_t {
  kForwarding = 1,
  kGeneration = 2,
  kFreeRiders = 3,
  kSourcePick = 4,
  kGraph = 5,
  kRun = 6,
};

/// seed' = mix(mix(mix(master) ^ purpose) ^ index)
constexpr std::uint64_t derive_seed(std::uint64_t master, Stream purpose,
                                    std::uint64_t index = 0) noexcept {
  return mix64(mix64(mix64(master) ^ static_cast<std::uint64_t>(purpose)) ^ index);
}

/// Thin wrapper over mt19937_64 with platform-independent real transforms
/// (the std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, bound). Lemire's nearly-divisionless method.
  std::uint64_t below(std::uint64_t bound) {
    uint128_t m = static_cast<uint128_t>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (low < threshold) {
        m = static_cast<uint128_t>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Exponential with the given mean, by inversion.
  double exponential(double mean) { return -mean * std::log1p(-uniform()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gossip
