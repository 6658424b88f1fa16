#pragma once

#include <array>
#include <cstdint>

namespace rabc {

// SplitMix64 (Steele, Lea & Flood). Used for seeding and as a hash finalizer.
//   state += 0x9E3779B97F4A7C15
//   z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
class SplitMix64
{
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // The output mixing function alone, applied to an arbitrary word.
  static std::uint64_t mix(std::uint64_t z);

private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman & Vigna). The four state words are filled from
// SplitMix64(seed), which never yields the all-zero state.
class Xoshiro256StarStar
{
public:
  using State = std::array<std::uint64_t, 4>;

  explicit Xoshiro256StarStar(std::uint64_t seed);
  explicit Xoshiro256StarStar(State const &state) : s_(state) {}

  std::uint64_t next();

  State const &state() const { return s_; }

private:
  State s_;
};

/**
 * Portable random stream shared by every stochastic step of the simulator.
 *
 * All derived distributions consume raw 64-bit words in a fixed, documented
 * order so that any implementation of the same algorithms reproduces the same
 * sequence:
 *   - uniform():  (next() >> 11) * 2^-53, a double in [0, 1).
 *   - gaussian(): Marsaglia polar method. Draw u = 2U-1 then v = 2U-1; reject
 *                 the pair while s = u^2 + v^2 is >= 1 or == 0; return
 *                 u * sqrt(-2 ln s / s). The second variate is discarded.
 *   - poisson():  Knuth multiplication. L = exp(-mean), p = 1, k = 0; repeat
 *                 { k += 1; p *= U } while p > L; return k - 1. A mean of 0
 *                 returns 0 without consuming the stream.
 */
class Random
{
public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_.next(); }
  double uniform();
  double uniform(double lo, double hi);
  double gaussian();
  double gaussian(double mean, double stddev);
  std::uint64_t poisson(double mean);
  // Uniform index in [0, n); n must be positive.
  std::size_t index(std::size_t n);

private:
  Xoshiro256StarStar engine_;
};

}  // namespace rabc
