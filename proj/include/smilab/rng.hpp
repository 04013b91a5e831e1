#ifndef SMILAB_RNG_HPP
#define SMILAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace smilab {

// Address of one Monte Carlo trial's random stream.  Streams for
// distinct (master_seed, trial_index) pairs are independent, so trials
// can run on any worker in any order and still draw identical values.
struct SeedPath {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

namespace rng_detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace rng_detail

// Per-trial generator: xoshiro256++ state expanded with splitmix64 from
// the counter pair.  All floating-point transforms are explicit, so the
// value sequence is a pure function of the seed path.
class TrialRng {
 public:
  explicit TrialRng(SeedPath path) {
    std::uint64_t x = path.master_seed + 0x9E3779B97F4A7C15ULL * (path.trial_index + 1);
    for (auto& s : s_) s = rng_detail::splitmix64(x);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // xoshiro state must be nonzero
  }

  std::uint64_t next_u64() {
    using rng_detail::rotl;
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1); safe under log/tan transforms.
  double uniform_open01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform on [-half_width, half_width).
  double uniform_sym(double half_width) { return half_width * (2.0 * uniform01() - 1.0); }

  // Gaussian with mean 0, standard deviation sd (Marsaglia polar method;
  // the spare value is cached, so call order matters for reproducibility).
  double normal(double sd) {
    if (has_spare_) {
      has_spare_ = false;
      return sd * spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return sd * (u * f);
  }

  // Centered Cauchy with scale gamma, via the inverse CDF.
  double cauchy(double gamma) {
    return gamma * std::tan(std::numbers::pi * (uniform_open01() - 0.5));
  }

  // +1 or -1 with probability 1/4 each, 0 with probability 1/2.
  // Dyadic probabilities come straight from two raw bits, so they are exact.
  int lazy_sign() {
    const std::uint64_t b = next_u64() >> 62;
    if (b == 0) return 1;
    if (b == 1) return -1;
    return 0;
  }

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace smilab

#endif
