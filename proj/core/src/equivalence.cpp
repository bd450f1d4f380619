#include "specphot/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "specphot/oracle.hpp"

namespace specphot {

namespace {

constexpr double kTolOracle = 1e-12;
constexpr double kTolExact = 1e-15;

SpectralAmplitude random_spectrum(std::mt19937_64& rng, const FrequencyGrid& grid) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> c(static_cast<std::size_t>(grid.n_bins()));
  double norm = 0.0;
  for (auto& v : c) {
    v = cplx{gauss(rng), gauss(rng)};
    norm += std::norm(v);
  }
  const double inv = 1.0 / std::sqrt(norm);
  for (auto& v : c) v *= inv;
  return SpectralAmplitude::normalized(grid, std::move(c));
}

FrequencyResponse random_sampled_response(std::mt19937_64& rng, const FrequencyGrid& grid,
                                          double lo, double hi) {
  std::vector<double> values(static_cast<std::size_t>(grid.n_bins()));
  for (auto& v : values) v = lo + (hi - lo) * uniform01(rng);
  return SampledResponse{grid, std::move(values)};
}

// Spectrum pair supported on disjoint bin sets (even vs odd bins).
std::pair<SpectralAmplitude, SpectralAmplitude> disjoint_pair(std::mt19937_64& rng,
                                                              const FrequencyGrid& grid) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> c(static_cast<std::size_t>(grid.n_bins()), cplx{0.0, 0.0});
  std::vector<cplx> d(static_cast<std::size_t>(grid.n_bins()), cplx{0.0, 0.0});
  double cn = 0.0;
  double dn = 0.0;
  for (int k = 1; k <= grid.n_bins(); ++k) {
    auto& target = (k % 2 == 0) ? c : d;
    auto& acc = (k % 2 == 0) ? cn : dn;
    target[static_cast<std::size_t>(k) - 1] = cplx{gauss(rng), gauss(rng)};
    acc += std::norm(target[static_cast<std::size_t>(k) - 1]);
  }
  for (auto& v : c) v /= std::sqrt(cn);
  for (auto& v : d) v /= std::sqrt(dn);
  return {SpectralAmplitude::normalized(grid, std::move(c)),
          SpectralAmplitude::normalized(grid, std::move(d))};
}

BiphotonAmplitude random_biphoton(std::mt19937_64& rng, const FrequencyGrid& grid, int m_index) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int k_low = std::max(1, m_index - grid.n_bins());
  const int k_high = std::min(grid.n_bins(), m_index - 1);
  std::vector<PairAmplitude> pairs;
  double norm = 0.0;
  for (int k = k_low; k <= k_high; ++k) {
    const cplx v{gauss(rng), gauss(rng)};
    norm += std::norm(v);
    pairs.push_back(PairAmplitude{k, v});
  }
  const double inv = 1.0 / std::sqrt(norm);
  for (auto& p : pairs) p.amplitude *= inv;
  return BiphotonAmplitude::from_pairs(grid, m_index, std::move(pairs));
}

FockState random_two_photon_state(std::mt19937_64& rng, const FrequencyGrid& grid) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> bin(1, grid.n_bins());
  std::uniform_int_distribution<int> coin(0, 1);
  FockState st = FockState::zero(grid);
  const int n_components = 8;
  for (int i = 0; i < n_components; ++i) {
    const ModeLabel first{coin(rng) == 0 ? Spatial::a : Spatial::b, bin(rng),
                          coin(rng) == 0 ? Polarization::H : Polarization::V};
    const ModeLabel second{coin(rng) == 0 ? Spatial::a : Spatial::b, bin(rng),
                           coin(rng) == 0 ? Polarization::H : Polarization::V};
    const cplx amp{gauss(rng), gauss(rng)};
    if (i % 3 == 0) {
      st.add_amplitude({first}, amp);
    } else {
      st.add_amplitude({first, second}, amp);
    }
  }
  st.normalize();
  return st;
}

struct Tally {
  double max_err = 0.0;
  void observe(double err) { max_err = std::max(max_err, std::abs(err)); }
};

}  // namespace

std::vector<CheckResult> run_equivalence_suite(const EquivalenceOptions& options) {
  std::vector<CheckResult> results;
  const int trials = std::max(1, options.trials);
  const int max_bins = std::max(1, std::min(options.max_bins, kOracleMaxBins));
  std::mt19937_64 rng(options.seed);

  // Closed-form MZI probabilities against full propagation.
  {
    Tally tally;
    for (int i = 0; i < trials; ++i) {
      const FrequencyGrid grid(0.5 + uniform01(rng),
                               1 + static_cast<int>(uniform01(rng) * max_bins));
      const auto s = random_spectrum(rng, grid);
      const auto phi_a = random_sampled_response(rng, grid, -std::numbers::pi, std::numbers::pi);
      const auto phi_b = random_sampled_response(rng, grid, -std::numbers::pi, std::numbers::pi);
      const auto closed = mzi_probabilities(s, phi_a, phi_b);
      const auto brute = oracle_mzi(s, phi_a, phi_b);
      tally.observe(closed.p_a - brute.p_a);
      tally.observe(closed.p_b - brute.p_b);
    }
    results.push_back({"mzi_probability_vs_oracle", trials, tally.max_err, tally.max_err < kTolOracle});
  }

  // Closed-form MZI per-bin amplitudes against full propagation. The
  // labeled outputs map to the final splitter's (cross, bar) ports.
  {
    Tally tally;
    for (int i = 0; i < trials; ++i) {
      const FrequencyGrid grid(0.5 + uniform01(rng),
                               1 + static_cast<int>(uniform01(rng) * max_bins));
      const auto s = random_spectrum(rng, grid);
      const auto phi_a = random_sampled_response(rng, grid, -std::numbers::pi, std::numbers::pi);
      const auto phi_b = random_sampled_response(rng, grid, -std::numbers::pi, std::numbers::pi);

      FockState st = inject_single_photon(s, Spatial::a);
      st = apply_beam_splitter(st, balanced_bs_angle());
      st = apply_phase(st, Spatial::a, phi_a);
      st = apply_phase(st, Spatial::b, phi_b);
      st = apply_beam_splitter(st, balanced_bs_angle());

      const auto closed = mzi_output_state(s, phi_a, phi_b);
      for (const auto& bin : closed.bins) {
        const cplx at_cross = st.amplitude({ModeLabel{Spatial::b, bin.bin, Polarization::H}});
        const cplx at_bar = st.amplitude({ModeLabel{Spatial::a, bin.bin, Polarization::H}});
        tally.observe(std::abs(bin.amp_a - at_cross));
        tally.observe(std::abs(bin.amp_b - at_bar));
      }
    }
    results.push_back({"mzi_amplitudes_vs_oracle", trials, tally.max_err, tally.max_err < kTolOracle});
  }

  // Closed-form coincidence against the literal double sum.
  {
    Tally tally;
    for (int i = 0; i < trials; ++i) {
      const FrequencyGrid grid(0.5 + uniform01(rng),
                               1 + static_cast<int>(uniform01(rng) * max_bins));
      const auto s = random_spectrum(rng, grid);
      const auto t = random_spectrum(rng, grid);
      const auto theta = random_sampled_response(rng, grid, 0.0, std::numbers::pi / 2.0);
      const auto brute = oracle_hom(s, t, theta);
      tally.observe(hom_coincidence(s, t, theta) - brute.p_coin_closed_form);
    }
    results.push_back(
        {"hom_closed_form_vs_direct_sum", trials, tally.max_err, tally.max_err < kTolOracle});
  }

  // Full two-photon physics at a balanced splitter reduces to the overlap
  // formula (1 - |<s|t>|^2)/2.
  {
    Tally tally;
    for (int i = 0; i < trials; ++i) {
      const FrequencyGrid grid(0.5 + uniform01(rng),
                               1 + static_cast<int>(uniform01(rng) * max_bins));
      const auto s = random_spectrum(rng, grid);
      const auto t = random_spectrum(rng, grid);
      const auto brute = oracle_hom(s, t, balanced_bs_angle());
      const double expected = 0.5 * (1.0 - std::norm(overlap(s, t)));
      tally.observe(brute.p_coin_full - expected);
    }
    results.push_back(
        {"hom_full_vs_overlap_formula", trials, tally.max_err, tally.max_err < kTolOracle});
  }

  // With disjoint bin supports the exchange term vanishes and the closed
  // form is exact for any splitter response.
  {
    Tally tally;
    for (int i = 0; i < trials; ++i) {
      const FrequencyGrid grid(0.5 + uniform01(rng),
                               2 + static_cast<int>(uniform01(rng) * std::max(1, max_bins - 1)));
      const auto [s, t] = disjoint_pair(rng, grid);
      const auto theta = random_sampled_response(rng, grid, 0.0, std::numbers::pi / 2.0);
      const auto brute = oracle_hom(s, t, theta);
      tally.observe(brute.p_coin_full - hom_coincidence(s, t, theta));
    }
    results.push_back(
        {"hom_disjoint_full_vs_closed_form", trials, tally.max_err, tally.max_err < kTolOracle});
  }

  // Closed-form PE against projector summation on the rotated pair state.
  {
    Tally tally;
    const int qbc_bins = std::clamp(2 * max_bins, 2, 20);
    for (int i = 0; i < trials; ++i) {
      const int n = 2 + static_cast<int>(uniform01(rng) * (qbc_bins - 1));
      const FrequencyGrid grid(0.5 + uniform01(rng), n);
      std::uniform_int_distribution<int> m_dist(2, 2 * n);
      const int m_index = m_dist(rng);
      const auto b = random_biphoton(rng, grid, m_index);
      const auto theta = random_sampled_response(rng, grid, 0.0, std::numbers::pi);
      tally.observe(cheat_error_probability(b, theta) - oracle_qbc(b, theta));
    }
    results.push_back({"qbc_pe_vs_oracle", trials, tally.max_err, tally.max_err < kTolOracle});
  }

  // Unitarity: every evolution step preserves the norm of random states.
  {
    Tally tally;
    const int cases = 10 * trials;
    for (int i = 0; i < cases; ++i) {
      const FrequencyGrid grid(0.5 + uniform01(rng),
                               1 + static_cast<int>(uniform01(rng) * max_bins));
      const FockState st = random_two_photon_state(rng, grid);
      const auto theta = random_sampled_response(rng, grid, 0.0, std::numbers::pi);
      const auto phi = random_sampled_response(rng, grid, -std::numbers::pi, std::numbers::pi);
      tally.observe(apply_beam_splitter(st, theta).norm_squared() - 1.0);
      tally.observe(apply_phase(st, Spatial::a, phi).norm_squared() - 1.0);
      tally.observe(apply_polarization_rotator(st, Spatial::b, theta).norm_squared() - 1.0);
    }
    results.push_back({"unitarity_norm_preservation", cases, tally.max_err, tally.max_err < kTolOracle});
  }

  // A zero-angle splitter is the identity map, bit for bit.
  {
    Tally tally;
    for (int i = 0; i < trials; ++i) {
      const FrequencyGrid grid(0.5 + uniform01(rng),
                               1 + static_cast<int>(uniform01(rng) * max_bins));
      const FockState st = random_two_photon_state(rng, grid);
      const FockState mapped = apply_beam_splitter(st, ConstantResponse{0.0});
      for (const auto& cfg : st.configurations()) {
        cplx after;
        if (cfg.photon_count == 0) {
          after = mapped.amplitude({});
        } else if (cfg.photon_count == 1) {
          after = mapped.amplitude({cfg.photons[0]});
        } else {
          after = mapped.amplitude({cfg.photons[0], cfg.photons[1]});
        }
        tally.observe(std::abs(after - cfg.amplitude));
      }
    }
    results.push_back({"bs_zero_angle_identity", trials, tally.max_err, tally.max_err < kTolExact});
  }

  // Two consecutive balanced splitters route a single photon to the
  // opposite port.
  {
    Tally tally;
    for (int i = 0; i < trials; ++i) {
      const FrequencyGrid grid(0.5 + uniform01(rng),
                               1 + static_cast<int>(uniform01(rng) * max_bins));
      const auto s = random_spectrum(rng, grid);
      FockState st = inject_single_photon(s, Spatial::a);
      st = apply_beam_splitter(st, balanced_bs_angle());
      st = apply_beam_splitter(st, balanced_bs_angle());
      KahanSum swapped;
      for (int k = 1; k <= grid.n_bins(); ++k) {
        swapped.add(std::norm(st.amplitude({ModeLabel{Spatial::b, k, Polarization::H}})));
      }
      tally.observe(swapped.value() - 1.0);
    }
    results.push_back({"double_balanced_bs_swaps_port", trials, tally.max_err,
                       tally.max_err < kTolOracle});
  }

  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace specphot
