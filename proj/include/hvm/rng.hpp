#pragma once

#include <cstdint>
#include <random>

namespace hvm {

/// SplitMix64 finalizer; used to derive well-separated engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seedable random stream. Substreams are a pure function of (seed, index), so
/// a trial's randomness does not depend on which thread runs it or in what order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed);
    r.engine_.seed(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
    return r;
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in the open interval (0, 1): 53-bit midpoint grid, never 0 or 1.
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on uniform_open(); portable across standard libraries.
  double normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Hidden-variable draw: uniform on (0, 1).
inline double draw_hidden(Rng& rng) { return rng.uniform_open(); }

}  // namespace hvm
