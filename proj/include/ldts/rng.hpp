#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ldts {

// SplitMix64 finalizer, used to derive substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seedable 64-bit generator: identical seed + identical call sequence gives
// identical outputs everywhere. The raw engine is mt19937_64 (output sequence
// fixed by the standard); variates are derived from raw bits rather than
// std:: distributions, whose output is implementation-defined. State is the
// seed plus the engine, which serializes via operator<< if ever needed.
class RngState {
 public:
  explicit RngState(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Independent stream keyed by (seed, tag). The trainer keys epoch streams
  // here so earlier epochs never depend on how long a run turns out to be.
  RngState substream(std::uint64_t tag) const {
    return RngState(splitmix64(seed_ ^ splitmix64(tag)));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1); never returns an endpoint.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Integer uniform on [0, bound).
  int uniform_int(int bound) {
    const int v = static_cast<int>(uniform01() * static_cast<double>(bound));
    return v < bound ? v : bound - 1;
  }

  // Standard normal via Box-Muller.
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  // Standard Gumbel(0, 1).
  double gumbel() { return -std::log(-std::log(uniform01())); }

 private:
  static constexpr double kTwoPi = 6.28318530717958647692;
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace ldts
