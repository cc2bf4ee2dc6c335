#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace logbbm {

// splitmix64 step; also used as the seed/substream hash.
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ with explicit samplers.  Standard-library distributions are
// implementation-defined, so every draw is pinned here: a fixed seed
// reproduces the identical stream on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
  }

  // Child seed for replicate `index` of a study seeded with `master`.
  static std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s = h ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return splitmix64(s);
  }

  static Rng substream(std::uint64_t master, std::uint64_t index) {
    return Rng(child_seed(master, index));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on the open interval (0,1); safe under log() and 1-u.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be > 0");
    return -std::log(uniform01()) / rate;
  }

  // Marsaglia polar method; second deviate cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    have_cached_ = true;
    return u * f;
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  // Uniform integer in [0, n); rejection keeps it exactly uniform.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n must be > 0");
    const std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= lim);
    return x % n;
  }

  // Poisson by sequential CDF inversion (exact).  Means above 400 are split
  // by additivity so the running pmf term never underflows.
  std::uint64_t poisson(double mean) {
    if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be >= 0");
    std::uint64_t total = 0;
    while (mean > 400.0) {
      total += poisson_small(mean / 2.0);
      mean /= 2.0;
    }
    return total + poisson_small(mean);
  }

  // Poisson conditioned to be >= 1, by rejection of the zero outcome.
  std::uint64_t poisson_positive(double mean) {
    if (!(mean > 0.0)) throw std::invalid_argument("poisson_positive: mean must be > 0");
    std::uint64_t k;
    do {
      k = poisson(mean);
    } while (k == 0);
    return k;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t poisson_small(double mean) {
    const double u = uniform01();
    double p = std::exp(-mean);
    double cum = p;
    std::uint64_t k = 0;
    while (u > cum) {
      ++k;
      p *= mean / static_cast<double>(k);
      cum += p;
      if (k > 100000) throw std::runtime_error("poisson: inversion failed to terminate");
    }
    return k;
  }

  std::uint64_t state_[4] = {};
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace logbbm
