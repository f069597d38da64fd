#ifndef POLYDISC_SAMPLING_HPP
#define POLYDISC_SAMPLING_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace polydisc {

// Small deterministic generator (splitmix64).  Used instead of <random>
// distributions so that identical seeds give identical samples on every
// platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1).
  double uniform() { return std::ldexp(static_cast<double>(next_u64() >> 11), -53); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Log-uniform in [lo,hi], lo,hi > 0.
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

  // A generic half-plane sample, kept away from the boundary so that
  // residual checks are well conditioned.
  std::complex<double> halfplane_point() {
    return {uniform(-2.0, 2.0), log_uniform(0.25, 4.0)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace polydisc

#endif
