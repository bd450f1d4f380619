#ifndef SPECPHOT_NUMERICS_HPP
#define SPECPHOT_NUMERICS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace specphot {

using cplx = std::complex<double>;

// Normalized sinc: sin(pi x) / (pi x), sinc(0) = 1.
//
// Arguments within 1e-9 of an integer are treated as exact samples, so
// on-grid evaluation returns 0/1 exactly even when the argument carries
// rounding crumbs from k*omega_s arithmetic. The true sinc differs from
// the snapped value by < 1e-9 there, far below every tolerance in use.
inline double sinc(double x) {
  const double n = std::nearbyint(x);
  if (std::abs(x - n) < 1e-9) {
    return n == 0.0 ? 1.0 : 0.0;
  }
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

// Compensated (Kahan) accumulator. Probability sums over up to ~1e4 bins
// must stay within 1e-12..1e-15 of their algebraic value, tighter than a
// naive left-to-right sum guarantees.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// SplitMix64 step; used to derive independent sub-seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic sub-seed for worker/sweep-step `index` under `seed`.
inline std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed ^ (0xA0761D6478BD642Full * (index + 1));
  return splitmix64(state);
}

// 53-bit uniform draw in [0, 1); identical across standard libraries,
// unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace specphot

#endif
