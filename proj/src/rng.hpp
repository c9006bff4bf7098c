#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace svbench {

// All randomness flows through these helpers so results are bit-identical
// across platforms and thread counts. std::mt19937_64's output sequence is
// fixed by the standard; the distributions below are our own because the
// standard ones are not.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent stream keyed by (root seed, stream key). Used to give every
// (increment, replicate) task its own generator so parallel execution cannot
// reorder draws.
inline std::mt19937_64 make_stream(std::uint64_t root_seed, std::uint64_t key) {
  std::uint64_t s = root_seed;
  std::uint64_t a = splitmix64(s);
  s = a ^ (key * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  return std::mt19937_64(seq);
}

inline std::mt19937_64 make_stream(std::uint64_t root_seed) { return make_stream(root_seed, 0); }

// Uniform integer in [0, n) by rejection; portable unlike
// std::uniform_int_distribution.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Poisson via Knuth's product method; adequate for the small rates used by
// the synthetic outcome models.
inline int poisson_knuth(std::mt19937_64& rng, double lambda) {
  if (lambda <= 0.0) return 0;
  double l = std::exp(-lambda);
  int k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= uniform_double(rng);
  } while (p > l);
  return k - 1;
}

}  // namespace svbench
