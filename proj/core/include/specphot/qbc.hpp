#ifndef SPECPHOT_QBC_HPP
#define SPECPHOT_QBC_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "specphot/devices.hpp"
#include "specphot/spectral.hpp"

namespace specphot {

enum class Polarization : std::uint8_t { H, V };

// Frequency-anti-correlated polarization-entangled photon pair. The two
// photons occupy bins (k, M-k) with M * omega_s = 2 * omega_0; Alice keeps
// the photon at k*omega_s, Bob the one at (M-k)*omega_s. Each pair carries
// the polarization state (|HH> + |VV>)/sqrt(2).
struct PairAmplitude {
  int bin_alice;   // k; Bob's bin is m_index - k
  cplx amplitude;  // s_k = sigma(k w_s, (M-k) w_s) sqrt(w_s), renormalized
};

class BiphotonAmplitude {
 public:
  // Validates bin ranges, k + l = M feasibility and unit norm (1e-9).
  static BiphotonAmplitude from_pairs(FrequencyGrid grid, int m_index,
                                      std::vector<PairAmplitude> pairs);

  const FrequencyGrid& grid() const { return grid_; }
  int m_index() const { return m_index_; }
  std::span<const PairAmplitude> pairs() const { return pairs_; }

 private:
  BiphotonAmplitude(FrequencyGrid grid, int m_index, std::vector<PairAmplitude> pairs)
      : grid_(grid), m_index_(m_index), pairs_(std::move(pairs)) {}

  FrequencyGrid grid_;
  int m_index_;
  std::vector<PairAmplitude> pairs_;
};

struct BiphotonBuild {
  BiphotonAmplitude biphoton;
  double sampled_mass;  // pre-renormalization mass; 1 - this is truncated
};

// Discretize an entangled pair whose detuning spectrum is `detuning_shape`
// (argument W = k*omega_s - omega_0). Requires 2*omega_0 to be an integer
// multiple of omega_s; pairs whose partner bin falls outside [1, N] are
// dropped and show up in the truncated mass.
BiphotonBuild make_bell_biphoton(const SpectralShape& detuning_shape, double omega_0,
                                 const FrequencyGrid& grid);

// Per-pair polarization coefficients after Alice's frequency-dependent
// cheating gate, ordered (Alice, Bob).
struct RotatedPair {
  int bin_alice;
  cplx hh, vh, hv, vv;
};

struct RotatedBiphoton {
  FrequencyGrid grid;
  int m_index;
  std::vector<RotatedPair> pairs;
};

// Applies the reflection [[cos t, sin t], [sin t, -cos t]] (the
// frequency-dependent NOT: equals X at t = pi/2) to Alice's polarization,
// with t = theta(k * omega_s) per pair.
RotatedBiphoton apply_rotator(const BiphotonAmplitude& b, const FrequencyResponse& theta);

// PE = sum_k |s_k|^2 cos^2(theta(k w_s)): the probability that Alice's and
// Bob's outcomes coincide after the cheating rotation, i.e. that Bob's
// comparison exposes the '0' -> '1' switch.
double cheat_error_probability(const BiphotonAmplitude& b, const FrequencyResponse& theta);

enum class Verdict : std::uint8_t { consistent, cheat_flagged };

struct ProtocolTrialRecord {
  long trial;
  int pair_k;
  Polarization alice_outcome;
  Polarization bob_outcome;
  int announced_bit;
  Verdict bob_verdict;
};

struct ProtocolResult {
  double detection_rate;  // fraction of trials Bob flagged
  std::vector<ProtocolTrialRecord> records;
};

// Monte-Carlo commit/unveil runs. Alice always prepares the logical-0 Bell
// pair; with `cheat` she applies the rotator before unveiling and announces
// committed_bit XOR 1. Bob flags a trial when the announced bit contradicts
// the outcome comparison. Deterministic for a given seed.
ProtocolResult simulate_protocol(const BiphotonAmplitude& b, const FrequencyResponse& theta,
                                 int committed_bit, bool cheat, long trials, std::uint64_t seed);

// CSV export: trial,pair_k,alice_outcome,bob_outcome,announced_bit,verdict
void write_records_csv(std::ostream& os, std::span<const ProtocolTrialRecord> records);

}  // namespace specphot

#endif
