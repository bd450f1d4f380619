#include <cmath>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "specphot/config.hpp"
#include "specphot/errors.hpp"
#include "specphot/interference.hpp"
#include "specphot/runner.hpp"

using namespace specphot;

namespace {

const char* kMinimalMzi = R"({
  "kind": "mzi",
  "grid": {"omega_s": 1.0, "n_bins": 16},
  "spectrum": {"shape": "gaussian", "center": 8.0, "std": 2.0},
  "phi_a": {"kind": "constant", "value": 0.3},
  "phi_b": {"kind": "constant", "value": 0.3}
})";

std::string qbc_config(double omega_0, long trials, std::uint64_t seed,
                       const std::string& extra = "") {
  std::ostringstream os;
  os << R"({
    "kind": "qbc",
    "grid": {"omega_s": 1.0, "n_bins": 299},
    "omega_0": )"
     << omega_0 << R"(,
    "spectrum": {"shape": "gaussian", "center": 0.0, "std": 10.0},
    "rotator": {"kind": "linear", "value_at_ref": 1.5707963267948966, "slope": 0.05,
                "ref_frequency": )"
     << omega_0 << R"(},
    "committed_bit": 0,
    "cheat": true,
    "trials": )"
     << trials << R"(,
    "seed": )"
     << seed << extra << "\n}";
  return os.str();
}

}  // namespace

TEST_CASE("minimal configs parse") {
  const auto config = parse_config(kMinimalMzi);
  CHECK(config.kind == ExperimentKind::mzi);
  CHECK(config.grid->n_bins() == 16);
  CHECK(!config.sweep.has_value());
}

TEST_CASE("diagnostics name the offending key") {
  CHECK_THROWS_WITH_AS(parse_config("{"), doctest::Contains("not valid JSON"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"kind": "mzi"})"), doctest::Contains("grid"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"kind": "warp"})"), doctest::Contains("unknown kind"),
                       ValidationError);
  const std::string with_theta = std::string(kMinimalMzi).insert(1, R"("theta": {},)");
  CHECK_THROWS_WITH_AS(parse_config(with_theta), doctest::Contains("theta"), ValidationError);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"kind": "mzi", "grid": {"omega_s": -1.0, "n_bins": 4}})"),
      doctest::Contains("omega_s"), ValidationError);
}

TEST_CASE("commensurability is checked at load time") {
  CHECK_THROWS_WITH_AS(parse_config(qbc_config(99.75, 0, 0)), doctest::Contains("incommensurate"),
                       ValidationError);
  CHECK_NOTHROW(parse_config(qbc_config(150.0, 0, 0)));
}

TEST_CASE("sweep blocks must name a numeric scalar leaf") {
  const std::string swept = qbc_config(
      150.0, 0, 7, R"(,
    "sweep": {"parameter": "rotator.slope", "start": 0.0, "stop": 0.15, "steps": 50})");
  const auto config = parse_config(swept);
  REQUIRE(config.sweep.has_value());
  CHECK(config.sweep->parameter == "rotator.slope");
  CHECK(config.sweep->steps == 50);

  const std::string bad_path = qbc_config(
      150.0, 0, 7, R"(,
    "sweep": {"parameter": "rotator.nope", "start": 0.0, "stop": 1.0, "steps": 3})");
  CHECK_THROWS_WITH_AS(parse_config(bad_path), doctest::Contains("does not name"),
                       ValidationError);

  const std::string not_numeric = qbc_config(
      150.0, 0, 7, R"(,
    "sweep": {"parameter": "rotator.kind", "start": 0.0, "stop": 1.0, "steps": 3})");
  CHECK_THROWS_WITH_AS(parse_config(not_numeric), doctest::Contains("not a scalar numeric"),
                       ValidationError);

  const char* hom_slope_sweep = R"({
    "kind": "hom",
    "grid": {"omega_s": 1.0, "n_bins": 32},
    "spectrum": {"shape": "gaussian", "center": 16.0, "std": 3.0},
    "spectrum_2": {"shape": "gaussian", "center": 16.0, "std": 3.0},
    "theta": {"kind": "linear", "value_at_ref": 0.7853981633974483, "slope": 0.0,
              "ref_frequency": 16.0},
    "sweep": {"parameter": "theta.slope", "start": 0.0, "stop": 0.05, "steps": 50}
  })";
  const auto hom_config = parse_config(hom_slope_sweep);
  REQUIRE(hom_config.sweep.has_value());
  CHECK(hom_config.sweep->parameter == "theta.slope");
  CHECK(hom_config.sweep->steps == 50);
}

TEST_CASE("an unreadable file is a clean error") {
  CHECK_THROWS_WITH_AS(load_config("/nonexistent/config.json"), doctest::Contains("cannot open"),
                       ValidationError);
}

TEST_CASE("mzi run emits a single row with the expected columns") {
  const auto config = parse_config(kMinimalMzi);
  const auto result = run(config);
  REQUIRE(result.columns == std::vector<std::string>{"sweep_value", "p_a", "p_b"});
  REQUIRE(result.rows.size() == 1);
  CHECK(std::holds_alternative<std::monostate>(result.rows[0][0]));
  CHECK(std::get<double>(result.rows[0][1]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::get<double>(result.rows[0][2]) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("hom sweep over the second spectrum's offset climbs monotonically to 1/2") {
  const char* text = R"({
    "kind": "hom",
    "grid": {"omega_s": 1.0, "n_bins": 64},
    "spectrum": {"shape": "gaussian", "center": 24.0, "std": 3.0},
    "spectrum_2": {"shape": "gaussian", "center": 24.0, "std": 3.0},
    "theta": {"kind": "constant", "value": 0.7853981633974483},
    "sweep": {"parameter": "spectrum_2.center", "start": 24.0, "stop": 40.0, "steps": 9}
  })";
  const auto config = parse_config(text);
  const auto result = run(config);
  REQUIRE(result.rows.size() == 9);
  double previous = -1.0;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const double center = std::get<double>(result.rows[i][0]);
    const double closed = std::get<double>(result.rows[i][1]);
    CHECK(closed >= previous - 1e-15);
    previous = closed;

    // Step-by-step check against direct evaluation outside the sweep
    // machinery.
    const FrequencyGrid grid(1.0, 64);
    const auto s = discretize(GaussianShape{24.0, 3.0}, grid).amplitude;
    const auto t = discretize(GaussianShape{center, 3.0}, grid).amplitude;
    const double direct = hom_coincidence(s, t, balanced_bs_angle());
    CHECK(closed == doctest::Approx(direct).epsilon(1e-15));
    // Within oracle capacity, the full-physics column is filled.
    CHECK(std::get<double>(result.rows[i][2]) >= 0.0);
  }
  const double final_value = std::get<double>(result.rows.back()[1]);
  CHECK(final_value == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(final_value <= 0.5 + 1e-12);
}

TEST_CASE("qbc sweep over the rotator slope matches the gaussian closed form") {
  const std::string swept = qbc_config(
      150.0, 0, 7, R"(,
    "sweep": {"parameter": "rotator.slope", "start": 0.0, "stop": 0.15, "steps": 50})");
  const auto config = parse_config(swept);
  const auto result = run(config);
  REQUIRE(result.rows.size() == 50);
  const double width = 10.0;
  for (const auto& row : result.rows) {
    const double slope = std::get<double>(row[0]);
    const double pe = std::get<double>(row[1]);
    const double expected = 0.5 * (1.0 - std::exp(-2.0 * slope * slope * width * width));
    CHECK(std::abs(pe - expected) < 1e-6);
    CHECK(std::holds_alternative<std::monostate>(row[2]));  // no Monte Carlo requested
    CHECK(std::get<long long>(row[3]) == 0);
  }
}

TEST_CASE("qbc monte carlo rows carry rate, trials and seed") {
  const auto config = parse_config(qbc_config(150.0, 20000, 77));
  std::vector<ProtocolTrialRecord> records;
  RunOptions options;
  options.capture_records = &records;
  const auto result = run(config, options);
  REQUIRE(result.rows.size() == 1);
  const auto& row = result.rows[0];
  CHECK(std::get<double>(row[2]) > 0.0);
  CHECK(std::get<long long>(row[3]) == 20000);
  CHECK(std::get<std::uint64_t>(row[4]) == 77);
  CHECK(records.size() == 20000);

  RunOptions with_override;
  with_override.seed_override = 123;
  const auto overridden = run(config, with_override);
  CHECK(std::get<std::uint64_t>(overridden.rows[0][4]) == 123);
}

TEST_CASE("identical configs and seeds give byte-identical CSV") {
  const std::string swept = qbc_config(
      150.0, 500, 11, R"(,
    "sweep": {"parameter": "rotator.slope", "start": 0.0, "stop": 0.1, "steps": 5})");
  const auto config = parse_config(swept);
  std::ostringstream first;
  std::ostringstream second;
  write_csv(first, run(config));
  write_csv(second, run(config));
  CHECK(first.str() == second.str());
  CHECK(first.str().starts_with("sweep_value,pe_closed_form,pe_monte_carlo,n_trials,seed\n"));
}

TEST_CASE("oracle-check configs run the suite") {
  const auto config = parse_config(R"({"kind": "oracle-check", "trials": 5, "max_bins": 4})");
  const auto result = run(config);
  CHECK(result.columns ==
        std::vector<std::string>{"check_name", "n_trials", "max_abs_error", "status"});
  CHECK(result.rows.size() == 9);
  CHECK(result.oracle_all_passed);
  for (const auto& row : result.rows) {
    CHECK(std::get<std::string>(row[3]) == "pass");
  }
}

TEST_CASE("mzi rows satisfy completeness as written in the file") {
  const char* text = R"({
    "kind": "mzi",
    "grid": {"omega_s": 1.0, "n_bins": 128},
    "spectrum": {"shape": "gaussian", "center": 64.0, "std": 9.0},
    "phi_a": {"kind": "fiber", "beta": 0.2, "beta2": 0.004, "beta3": 0.0,
              "length": 1.0, "carrier": 64.0},
    "phi_b": {"kind": "constant", "value": 0.1},
    "sweep": {"parameter": "phi_a.beta2", "start": 0.0, "stop": 0.02, "steps": 11}
  })";
  std::ostringstream os;
  write_csv(os, run(parse_config(text)));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);  // header
  int rows = 0;
  while (std::getline(in, line)) {
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    const double p_a = std::stod(line.substr(first + 1, second - first - 1));
    const double p_b = std::stod(line.substr(second + 1));
    CHECK(p_a >= 0.0);
    CHECK(p_a <= 1.0);
    CHECK(p_b >= 0.0);
    CHECK(p_b <= 1.0);
    CHECK(std::abs(p_a + p_b - 1.0) < 1e-9);  // post-rounding tolerance
    ++rows;
  }
  CHECK(rows == 11);
}

TEST_CASE("numbers render with 12 significant digits") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(0.123456789012345) == "0.123456789012");
  CHECK(format_number(3.0e-16) == "3e-16");
  CHECK(format_number(0.25000000000001) == "0.25");  // 13th digit is rounded away
}
