#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <doctest.h>

#include "oracles.hpp"
#include "specphot/errors.hpp"
#include "specphot/oracle.hpp"

using namespace specphot;

namespace {

BiphotonAmplitude random_biphoton(std::mt19937_64& rng, const FrequencyGrid& grid, int m_index) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<PairAmplitude> pairs;
  double norm = 0.0;
  for (int k = std::max(1, m_index - grid.n_bins()); k <= std::min(grid.n_bins(), m_index - 1);
       ++k) {
    pairs.push_back({k, cplx{gauss(rng), gauss(rng)}});
    norm += std::norm(pairs.back().amplitude);
  }
  for (auto& p : pairs) p.amplitude /= std::sqrt(norm);
  return BiphotonAmplitude::from_pairs(grid, m_index, std::move(pairs));
}

}  // namespace

TEST_CASE("carrier must be commensurate with the grid") {
  const FrequencyGrid grid(1.0, 300);
  CHECK_THROWS_WITH_AS(make_bell_biphoton(GaussianShape{0.0, 5.0}, 99.75, grid),
                       doctest::Contains("incommensurate"), ValidationError);
  CHECK_NOTHROW(make_bell_biphoton(GaussianShape{0.0, 5.0}, 100.0, grid));
}

TEST_CASE("detuning support concentrated at zero gives the single degenerate pair") {
  const FrequencyGrid grid(1.0, 300);
  const auto [b, mass] = make_bell_biphoton(RectangularShape{-0.4, 0.4}, 100.0, grid);
  REQUIRE(b.pairs().size() == 1);
  CHECK(b.m_index() == 200);
  CHECK(b.pairs()[0].bin_alice == 100);
  CHECK(b.pairs()[0].amplitude.real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("a symmetric detuning shape gives mirror-symmetric pair weights") {
  const FrequencyGrid grid(1.0, 300);
  const auto [b, mass] = make_bell_biphoton(GaussianShape{0.0, 5.0}, 100.0, grid);
  const int m = b.m_index();
  for (const auto& p : b.pairs()) {
    const int partner_bin = m - p.bin_alice;
    bool found = false;
    for (const auto& q : b.pairs()) {
      if (q.bin_alice == partner_bin) {
        CHECK(std::abs(std::abs(q.amplitude) - std::abs(p.amplitude)) < 1e-15);
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("pair weights agree with per-bin quadrature of the intensity") {
  const FrequencyGrid grid(1.0, 599);
  const GaussianShape shape{0.0, 40.0};
  const auto [b, mass] = make_bell_biphoton(SpectralShape{shape}, 300.0, grid);
  double total = 0.0;
  for (const auto& p : b.pairs()) total += std::norm(p.amplitude);
  CHECK(std::abs(total - 1.0) < 1e-12);
  for (const auto& p : b.pairs()) {
    if (std::abs(p.bin_alice - 300) > 240) continue;  // skip the empty far tails
    const double detuning = grid.bin_frequency(p.bin_alice) - 300.0;
    const double quad = testing::integrate(
        [&](double w) { return std::norm(evaluate(SpectralShape{shape}, w)); },
        detuning - 0.5 * grid.omega_s(), detuning + 0.5 * grid.omega_s());
    CHECK(std::abs(std::norm(p.amplitude) - quad) < 1e-6);
  }
}

TEST_CASE("dropped partner bins show up as truncated mass") {
  // Pairs need 1 <= M-k <= N; a wide shape on a short grid loses mass.
  const FrequencyGrid grid(1.0, 30);
  const auto [b, mass] = make_bell_biphoton(GaussianShape{0.0, 20.0}, 15.0, grid);
  CHECK(mass < 0.9);
  double total = 0.0;
  for (const auto& p : b.pairs()) total += std::norm(p.amplitude);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rotator reference angles") {
  const FrequencyGrid grid(1.0, 10);
  std::mt19937_64 rng(19);
  const auto b = random_biphoton(rng, grid, 10);

  const auto to_one = apply_rotator(b, ConstantResponse{std::numbers::pi / 2});
  for (std::size_t i = 0; i < to_one.pairs.size(); ++i) {
    const auto& rp = to_one.pairs[i];
    const cplx expected = b.pairs()[i].amplitude / std::sqrt(2.0);
    CHECK(std::abs(rp.hh) < 1e-12);
    CHECK(std::abs(rp.vv) < 1e-12);
    CHECK(std::abs(rp.vh - expected) < 1e-15);
    CHECK(std::abs(rp.hv - expected) < 1e-15);
  }

  const auto identity_like = apply_rotator(b, ConstantResponse{0.0});
  for (std::size_t i = 0; i < identity_like.pairs.size(); ++i) {
    const auto& rp = identity_like.pairs[i];
    const cplx expected = b.pairs()[i].amplitude / std::sqrt(2.0);
    CHECK(std::abs(rp.hh - expected) < 1e-15);
    CHECK(std::abs(rp.vv + expected) < 1e-15);
    CHECK(std::abs(rp.vh) == 0.0);
    CHECK(std::abs(rp.hv) == 0.0);
  }
}

TEST_CASE("rotation preserves the norm and matches the state-vector route") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + static_cast<int>(uniform01(rng) * 9);
    const FrequencyGrid grid(1.0, n);
    std::uniform_int_distribution<int> m_dist(2, 2 * n);
    const int m_index = m_dist(rng);
    const auto b = random_biphoton(rng, grid, m_index);
    const FrequencyResponse theta =
        SampledResponse{grid, testing::random_values(rng, n, 0.0, std::numbers::pi)};

    const auto rotated = apply_rotator(b, theta);
    double norm = 0.0;
    for (const auto& rp : rotated.pairs) {
      norm += std::norm(rp.hh) + std::norm(rp.vh) + std::norm(rp.hv) + std::norm(rp.vv);
    }
    CHECK(std::abs(norm - 1.0) < 1e-12);

    // Same rotation on the full state vector, pair by pair.
    FockState st = FockState::zero(grid);
    for (const auto& p : b.pairs()) {
      const int partner = m_index - p.bin_alice;
      st.add_amplitude({ModeLabel{Spatial::a, p.bin_alice, Polarization::H},
                        ModeLabel{Spatial::b, partner, Polarization::H}},
                       p.amplitude / std::sqrt(2.0));
      st.add_amplitude({ModeLabel{Spatial::a, p.bin_alice, Polarization::V},
                        ModeLabel{Spatial::b, partner, Polarization::V}},
                       p.amplitude / std::sqrt(2.0));
    }
    const FockState evolved = apply_polarization_rotator(st, Spatial::a, theta);
    for (const auto& rp : rotated.pairs) {
      const int partner = m_index - rp.bin_alice;
      const ModeLabel ah{Spatial::a, rp.bin_alice, Polarization::H};
      const ModeLabel av{Spatial::a, rp.bin_alice, Polarization::V};
      const ModeLabel bh{Spatial::b, partner, Polarization::H};
      const ModeLabel bv{Spatial::b, partner, Polarization::V};
      CHECK(std::abs(rp.hh - evolved.amplitude({ah, bh})) < 1e-12);
      CHECK(std::abs(rp.vh - evolved.amplitude({av, bh})) < 1e-12);
      CHECK(std::abs(rp.hv - evolved.amplitude({ah, bv})) < 1e-12);
      CHECK(std::abs(rp.vv - evolved.amplitude({av, bv})) < 1e-12);
    }
  }
}

TEST_CASE("cheat detection closed form") {
  const FrequencyGrid grid(1.0, 20);
  std::mt19937_64 rng(23);
  const auto b = random_biphoton(rng, grid, 20);

  CHECK(cheat_error_probability(b, ConstantResponse{std::numbers::pi / 2}) < 1e-12);
  CHECK(cheat_error_probability(b, ConstantResponse{std::numbers::pi / 3}) ==
        doctest::Approx(0.25).epsilon(1e-15));

  for (int i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(uniform01(rng) * 18);
    const FrequencyGrid g(1.0, n);
    std::uniform_int_distribution<int> m_dist(2, 2 * n);
    const auto bp = random_biphoton(rng, g, m_dist(rng));
    const FrequencyResponse theta =
        SampledResponse{g, testing::random_values(rng, n, 0.0, std::numbers::pi)};
    const double pe = cheat_error_probability(bp, theta);
    CHECK(pe >= 0.0);
    CHECK(pe <= 1.0);
    CHECK(std::abs(pe - oracle_qbc(bp, theta)) < 1e-12);
  }
}

TEST_CASE("linear-detuning rotator over a gaussian biphoton hits the closed form") {
  // theta(w) = pi/2 + s * (w - w0) over |sigma(W)|^2 gaussian of std W:
  // PE = (1 - exp(-2 s^2 W^2)) / 2.
  const double width = 10.0;
  const FrequencyGrid grid(1.0, 299);
  const double omega_0 = 150.0;
  const auto [b, mass] = make_bell_biphoton(GaussianShape{0.0, width}, omega_0, grid);
  for (int i = 0; i <= 50; ++i) {
    const double slope = 0.15 * i / 50.0;
    const FrequencyResponse theta =
        LinearDetuningResponse{std::numbers::pi / 2, slope, omega_0};
    const double expected = 0.5 * (1.0 - std::exp(-2.0 * slope * slope * width * width));
    CHECK(std::abs(cheat_error_probability(b, theta) - expected) < 1e-6);
  }
}

TEST_CASE("honest unveiling of 0 is never flagged") {
  const FrequencyGrid grid(1.0, 20);
  std::mt19937_64 rng(27);
  const auto b = random_biphoton(rng, grid, 20);
  const auto result = simulate_protocol(b, ConstantResponse{0.3}, 0, false, 5000, 99);
  CHECK(result.detection_rate == 0.0);
  REQUIRE(result.records.size() == 5000);
  for (const auto& r : result.records) {
    CHECK(r.announced_bit == 0);
    CHECK(r.alice_outcome == r.bob_outcome);
    CHECK(r.bob_verdict == Verdict::consistent);
  }
}

TEST_CASE("an exact X gate cheat is undetectable") {
  const FrequencyGrid grid(1.0, 20);
  std::mt19937_64 rng(29);
  const auto b = random_biphoton(rng, grid, 20);
  const auto result =
      simulate_protocol(b, ConstantResponse{std::numbers::pi / 2}, 0, true, 5000, 7);
  CHECK(result.detection_rate == 0.0);
  for (const auto& r : result.records) {
    CHECK(r.announced_bit == 1);
    CHECK(r.alice_outcome != r.bob_outcome);
  }
}

TEST_CASE("detection rate concentrates around the closed form") {
  const FrequencyGrid grid(1.0, 20);
  std::mt19937_64 rng(31);
  const auto b = random_biphoton(rng, grid, 20);
  const long trials = 100000;
  const double sigma = std::sqrt(0.25 * 0.75 / static_cast<double>(trials));
  const auto result =
      simulate_protocol(b, ConstantResponse{std::numbers::pi / 3}, 0, true, trials, 1234);
  CHECK(std::abs(result.detection_rate - 0.25) < 3.0 * sigma);
}

TEST_CASE("empirical rate converges to PE at one million trials") {
  const FrequencyGrid grid(1.0, 12);
  std::mt19937_64 rng(33);
  const auto b = random_biphoton(rng, grid, 12);
  const FrequencyResponse theta =
      SampledResponse{grid, testing::random_values(rng, 12, 0.0, std::numbers::pi)};
  const double pe = cheat_error_probability(b, theta);
  const long trials = 1000000;
  const double sigma = std::sqrt(pe * (1.0 - pe) / static_cast<double>(trials));
  for (const std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    const auto result = simulate_protocol(b, theta, 0, true, trials, seed);
    CHECK(std::abs(result.detection_rate - pe) < 4.0 * sigma);
  }
}

TEST_CASE("the protocol is deterministic per seed and validates inputs") {
  const FrequencyGrid grid(1.0, 10);
  std::mt19937_64 rng(35);
  const auto b = random_biphoton(rng, grid, 10);
  const FrequencyResponse theta = ConstantResponse{0.9};
  const auto first = simulate_protocol(b, theta, 1, true, 2000, 42);
  const auto second = simulate_protocol(b, theta, 1, true, 2000, 42);
  CHECK(first.detection_rate == second.detection_rate);
  REQUIRE(first.records.size() == second.records.size());
  for (std::size_t i = 0; i < first.records.size(); ++i) {
    CHECK(first.records[i].trial == static_cast<long>(i));
    CHECK(first.records[i].pair_k == second.records[i].pair_k);
    CHECK(first.records[i].alice_outcome == second.records[i].alice_outcome);
    CHECK(first.records[i].bob_outcome == second.records[i].bob_outcome);
  }
  CHECK_THROWS_AS(simulate_protocol(b, theta, 0, false, 0, 1), ValidationError);
  CHECK_THROWS_AS(simulate_protocol(b, theta, 2, false, 10, 1), ValidationError);
}

TEST_CASE("record CSV format") {
  std::vector<ProtocolTrialRecord> records;
  records.push_back({0, 3, Polarization::H, Polarization::H, 0, Verdict::consistent});
  records.push_back({1, 4, Polarization::H, Polarization::V, 1, Verdict::consistent});
  records.push_back({2, 5, Polarization::V, Polarization::V, 1, Verdict::cheat_flagged});
  std::ostringstream os;
  write_records_csv(os, records);
  CHECK(os.str() ==
        "trial,pair_k,alice_outcome,bob_outcome,announced_bit,verdict\n"
        "0,3,H,H,0,consistent\n"
        "1,4,H,V,1,consistent\n"
        "2,5,V,V,1,cheat_flagged\n");
}
