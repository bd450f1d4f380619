#include "specphot/qbc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "specphot/errors.hpp"

namespace specphot {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

BiphotonAmplitude BiphotonAmplitude::from_pairs(FrequencyGrid grid, int m_index,
                                                std::vector<PairAmplitude> pairs) {
  if (pairs.empty()) {
    throw ValidationError("biphoton: no pairs (empty support)");
  }
  KahanSum norm;
  for (const auto& p : pairs) {
    const int partner = m_index - p.bin_alice;
    if (p.bin_alice < 1 || p.bin_alice > grid.n_bins() || partner < 1 || partner > grid.n_bins()) {
      throw ValidationError("biphoton: pair (" + std::to_string(p.bin_alice) + ", " +
                            std::to_string(partner) + ") falls outside the grid");
    }
    norm.add(std::norm(p.amplitude));
  }
  if (std::abs(norm.value() - 1.0) > 1e-9) {
    throw ValidationError("biphoton: sum |s_k|^2 deviates from 1 by more than 1e-9");
  }
  return BiphotonAmplitude(grid, m_index, std::move(pairs));
}

BiphotonBuild make_bell_biphoton(const SpectralShape& detuning_shape, double omega_0,
                                 const FrequencyGrid& grid) {
  validate(detuning_shape);
  const double ratio = 2.0 * omega_0 / grid.omega_s();
  const double rounded = std::nearbyint(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, std::abs(ratio))) {
    throw ValidationError("omega_0: grid incommensurate with carrier (2*omega_0/omega_s = " +
                          std::to_string(ratio) + " is not an integer)");
  }
  const int m_index = static_cast<int>(rounded);
  if (m_index < 2) {
    throw ValidationError("omega_0: 2*omega_0/omega_s must be >= 2 so both bins are positive");
  }

  const int k_low = std::max(1, m_index - grid.n_bins());
  const int k_high = std::min(grid.n_bins(), m_index - 1);
  std::vector<PairAmplitude> pairs;
  KahanSum mass;
  const double root_spacing = std::sqrt(grid.omega_s());
  for (int k = k_low; k <= k_high; ++k) {
    const double detuning = grid.bin_frequency(k) - omega_0;
    const cplx s = evaluate(detuning_shape, detuning) * root_spacing;
    if (s != cplx{0.0, 0.0}) {
      pairs.push_back(PairAmplitude{k, s});
    }
    mass.add(std::norm(s));
  }
  const double raw_mass = mass.value();
  if (pairs.empty() || raw_mass == 0.0) {
    throw ValidationError("empty spectrum: detuning shape support misses the pair grid");
  }
  const double inv = 1.0 / std::sqrt(raw_mass);
  for (auto& p : pairs) p.amplitude *= inv;
  return BiphotonBuild{BiphotonAmplitude::from_pairs(grid, m_index, std::move(pairs)),
                       raw_mass / l2_norm_squared(detuning_shape)};
}

RotatedBiphoton apply_rotator(const BiphotonAmplitude& b, const FrequencyResponse& theta) {
  RotatedBiphoton out{b.grid(), b.m_index(), {}};
  out.pairs.reserve(b.pairs().size());
  for (const auto& p : b.pairs()) {
    const double th = eval(theta, b.grid().bin_frequency(p.bin_alice));
    const cplx scaled = p.amplitude * kInvSqrt2;
    const double c = std::cos(th);
    const double s = std::sin(th);
    out.pairs.push_back(RotatedPair{p.bin_alice, c * scaled, s * scaled, s * scaled, -c * scaled});
  }
  return out;
}

double cheat_error_probability(const BiphotonAmplitude& b, const FrequencyResponse& theta) {
  KahanSum pe;
  for (const auto& p : b.pairs()) {
    const double c = std::cos(eval(theta, b.grid().bin_frequency(p.bin_alice)));
    pe.add(std::norm(p.amplitude) * c * c);
  }
  return pe.value();
}

ProtocolResult simulate_protocol(const BiphotonAmplitude& b, const FrequencyResponse& theta,
                                 int committed_bit, bool cheat, long trials, std::uint64_t seed) {
  if (trials < 1) {
    throw ValidationError("trials: must be >= 1");
  }
  if (committed_bit != 0 && committed_bit != 1) {
    throw ValidationError("committed_bit: must be 0 or 1");
  }

  // Inverse-CDF table over pair probabilities |s_k|^2.
  std::vector<double> cdf;
  cdf.reserve(b.pairs().size());
  double running = 0.0;
  for (const auto& p : b.pairs()) {
    running += std::norm(p.amplitude);
    cdf.push_back(running);
  }
  cdf.back() = std::max(cdf.back(), 1.0);  // guard the final bucket against rounding

  std::mt19937_64 rng(seed);
  const int announced = cheat ? committed_bit ^ 1 : committed_bit;
  std::vector<ProtocolTrialRecord> records;
  records.reserve(static_cast<std::size_t>(trials));
  long flagged = 0;

  for (long t = 0; t < trials; ++t) {
    const double u = uniform01(rng);
    const std::size_t idx = static_cast<std::size_t>(
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    const auto& pair = b.pairs()[std::min(idx, b.pairs().size() - 1)];

    Polarization alice = Polarization::H;
    Polarization bob = Polarization::H;
    const double v = uniform01(rng);
    if (cheat) {
      // Outcome cells of the rotated pair: HH cos^2/2, VH sin^2/2,
      // HV sin^2/2, VV cos^2/2.
      const double th = eval(theta, b.grid().bin_frequency(pair.bin_alice));
      const double c2 = std::cos(th) * std::cos(th);
      const double s2 = 1.0 - c2;
      if (v < 0.5 * c2) {
        alice = Polarization::H;
        bob = Polarization::H;
      } else if (v < 0.5 * c2 + 0.5 * s2) {
        alice = Polarization::V;
        bob = Polarization::H;
      } else if (v < 0.5 * c2 + s2) {
        alice = Polarization::H;
        bob = Polarization::V;
      } else {
        alice = Polarization::V;
        bob = Polarization::V;
      }
    } else {
      // (|HH> + |VV>)/sqrt(2): outcomes always agree.
      alice = bob = (v < 0.5) ? Polarization::H : Polarization::V;
    }

    const bool same = alice == bob;
    const bool flag = (announced == 0) ? !same : same;
    if (flag) ++flagged;
    records.push_back(ProtocolTrialRecord{t, pair.bin_alice, alice, bob, announced,
                                          flag ? Verdict::cheat_flagged : Verdict::consistent});
  }

  return ProtocolResult{static_cast<double>(flagged) / static_cast<double>(trials),
                        std::move(records)};
}

void write_records_csv(std::ostream& os, std::span<const ProtocolTrialRecord> records) {
  os << "trial,pair_k,alice_outcome,bob_outcome,announced_bit,verdict\n";
  for (const auto& r : records) {
    os << r.trial << ',' << r.pair_k << ',' << (r.alice_outcome == Polarization::H ? 'H' : 'V')
       << ',' << (r.bob_outcome == Polarization::H ? 'H' : 'V') << ',' << r.announced_bit << ','
       << (r.bob_verdict == Verdict::cheat_flagged ? "cheat_flagged" : "consistent") << '\n';
  }
}

}  // namespace specphot
