#include "rabc/random.hpp"

#include <cmath>
#include <stdexcept>

namespace rabc {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k)
{
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t SplitMix64::mix(std::uint64_t z)
{
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next()
{
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix(state_);
}

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed)
{
  SplitMix64 seeder(seed);
  for (auto &word : s_)
  {
    word = seeder.next();
  }
}

std::uint64_t Xoshiro256StarStar::next()
{
  std::uint64_t const result = rotl(s_[1] * 5, 7) * 9;
  std::uint64_t const t      = s_[1] << 17;

  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];

  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);

  return result;
}

double Random::uniform()
{
  return static_cast<double>(engine_.next() >> 11) * 0x1.0p-53;
}

double Random::uniform(double lo, double hi)
{
  return lo + (hi - lo) * uniform();
}

double Random::gaussian()
{
  double u = 0;
  double s = 0;
  do
  {
    u        = 2.0 * uniform() - 1.0;
    double v = 2.0 * uniform() - 1.0;
    s        = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return u * std::sqrt(-2.0 * std::log(s) / s);
}

double Random::gaussian(double mean, double stddev)
{
  return mean + stddev * gaussian();
}

std::uint64_t Random::poisson(double mean)
{
  if (!(mean >= 0.0) || !std::isfinite(mean))
  {
    throw std::invalid_argument("poisson mean must be finite and non-negative");
  }
  if (mean == 0.0)
  {
    return 0;
  }
  double const  limit = std::exp(-mean);
  double        p     = 1.0;
  std::uint64_t k     = 0;
  do
  {
    ++k;
    p *= uniform();
  } while (p > limit);
  return k - 1;
}

std::size_t Random::index(std::size_t n)
{
  if (n == 0)
  {
    throw std::invalid_argument("index range must be non-empty");
  }
  auto const i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return i < n ? i : n - 1;
}

}  // namespace rabc
