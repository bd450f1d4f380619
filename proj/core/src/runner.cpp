#include "specphot/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "specphot/equivalence.hpp"
#include "specphot/errors.hpp"
#include "specphot/oracle.hpp"

namespace specphot {

namespace {

constexpr double kTruncationWarnThreshold = 1e-6;

void warn_truncation(const RunOptions& options, const char* key, double sampled_mass) {
  if (options.warnings != nullptr && 1.0 - sampled_mass > kTruncationWarnThreshold) {
    *options.warnings << "warning: " << key << ": grid captures only "
                      << format_number(sampled_mass)
                      << " of the shape's power; results describe the renormalized truncation\n";
  }
}

std::vector<Cell> run_mzi_row(const ExperimentConfig& config, const RunOptions& options,
                              Cell sweep_value) {
  const auto [spectrum, mass] = discretize(*config.spectrum, *config.grid);
  warn_truncation(options, "spectrum", mass);
  const OutputProbabilities p = mzi_probabilities(spectrum, *config.phi_a, *config.phi_b);
  return {std::move(sweep_value), Cell{p.p_a}, Cell{p.p_b}};
}

std::vector<Cell> run_hom_row(const ExperimentConfig& config, const RunOptions& options,
                              Cell sweep_value) {
  const auto [s, mass_s] = discretize(*config.spectrum, *config.grid);
  const auto [t, mass_t] = discretize(*config.spectrum_2, *config.grid);
  warn_truncation(options, "spectrum", mass_s);
  warn_truncation(options, "spectrum_2", mass_t);
  const double closed = hom_coincidence(s, t, *config.theta);
  Cell full = std::monostate{};
  if (config.grid->n_bins() <= kOracleMaxBins) {
    full = oracle_hom(s, t, *config.theta).p_coin_full;
  }
  return {std::move(sweep_value), Cell{closed}, std::move(full)};
}

std::vector<Cell> run_qbc_row(const ExperimentConfig& config, const RunOptions& options,
                              Cell sweep_value, std::uint64_t seed) {
  const auto [biphoton, mass] =
      make_bell_biphoton(*config.spectrum, config.qbc->omega_0, *config.grid);
  warn_truncation(options, "spectrum", mass);
  const double pe = cheat_error_probability(biphoton, *config.rotator);
  Cell monte_carlo = std::monostate{};
  const long trials = config.qbc->trials;
  if (trials > 0) {
    ProtocolResult result = simulate_protocol(biphoton, *config.rotator,
                                              config.qbc->committed_bit, config.qbc->cheat,
                                              trials, seed);
    monte_carlo = result.detection_rate;
    if (options.capture_records != nullptr) {
      *options.capture_records = std::move(result.records);
    }
  }
  return {std::move(sweep_value), Cell{pe}, std::move(monte_carlo),
          Cell{static_cast<long long>(trials)}, Cell{seed}};
}

}  // namespace

SweepResult run(const ExperimentConfig& config, const RunOptions& options) {
  SweepResult result;

  if (config.kind == ExperimentKind::oracle_check) {
    result.columns = {"check_name", "n_trials", "max_abs_error", "status"};
    EquivalenceOptions eq;
    eq.trials = config.oracle_trials;
    eq.max_bins = config.oracle_max_bins;
    if (options.seed_override) eq.seed = *options.seed_override;
    const auto checks = run_equivalence_suite(eq);
    result.oracle_all_passed = all_passed(checks);
    for (const auto& c : checks) {
      result.rows.push_back({Cell{c.name}, Cell{static_cast<long long>(c.n_trials)},
                             Cell{c.max_abs_error}, Cell{std::string(c.passed ? "pass" : "fail")}});
    }
    return result;
  }

  switch (config.kind) {
    case ExperimentKind::mzi:
      result.columns = {"sweep_value", "p_a", "p_b"};
      break;
    case ExperimentKind::hom:
      result.columns = {"sweep_value", "p_coin_closed_form", "p_coin_oracle_full"};
      break;
    case ExperimentKind::qbc:
      result.columns = {"sweep_value", "pe_closed_form", "pe_monte_carlo", "n_trials", "seed"};
      break;
    default:
      break;
  }

  const std::uint64_t master_seed = [&] {
    if (options.seed_override) return *options.seed_override;
    if (config.qbc) return config.qbc->seed;
    return std::uint64_t{0};
  }();

  const auto execute = [&](const ExperimentConfig& step_config, Cell sweep_value,
                           std::uint64_t seed) {
    switch (step_config.kind) {
      case ExperimentKind::mzi:
        return run_mzi_row(step_config, options, std::move(sweep_value));
      case ExperimentKind::hom:
        return run_hom_row(step_config, options, std::move(sweep_value));
      case ExperimentKind::qbc:
        return run_qbc_row(step_config, options, std::move(sweep_value), seed);
      default:
        throw ValidationError("run: unsupported experiment kind");
    }
  };

  if (!config.sweep) {
    result.rows.push_back(execute(config, std::monostate{}, master_seed));
    return result;
  }

  const SweepSpec& sweep = *config.sweep;
  nlohmann::json document = nlohmann::json::parse(config.raw_json);
  std::string pointer = "/";
  for (const char c : sweep.parameter) pointer += (c == '.') ? '/' : c;
  const auto ptr = nlohmann::json::json_pointer(pointer);

  for (int step = 0; step < sweep.steps; ++step) {
    const double value =
        sweep.steps == 1
            ? sweep.start
            : sweep.start + (sweep.stop - sweep.start) * step / (sweep.steps - 1);
    document[ptr] = value;
    ExperimentConfig step_config;
    try {
      step_config = parse_config(document.dump());
    } catch (const ValidationError& e) {
      throw ValidationError("sweep step " + std::to_string(step) + " (" + sweep.parameter + " = " +
                            format_number(value) + "): " + e.what());
    }
    // Per-step sub-seed, so parallel or partial re-runs stay reproducible.
    const std::uint64_t step_seed =
        config.kind == ExperimentKind::qbc
            ? derive_subseed(master_seed, static_cast<std::uint64_t>(step))
            : master_seed;
    result.rows.push_back(execute(step_config, Cell{value}, step_seed));
  }
  return result;
}

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

namespace {

std::string cell_text(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return "";
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* u = std::get_if<std::uint64_t>(&cell)) return std::to_string(*u);
  return std::get<std::string>(cell);
}

}  // namespace

void write_csv(std::ostream& os, const SweepResult& result) {
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    if (i > 0) os << ',';
    os << result.columns[i];
  }
  os << '\n';
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) os << ',';
      os << cell_text(row[i]);
    }
    os << '\n';
  }
}

void print_summary(std::ostream& os, const ExperimentConfig& config, const SweepResult& result) {
  os << "kind: " << kind_name(config.kind) << "\n";
  os << "rows: " << result.rows.size() << "\n";

  std::vector<std::size_t> widths(result.columns.size());
  for (std::size_t i = 0; i < result.columns.size(); ++i) widths[i] = result.columns[i].size();
  std::vector<std::vector<std::string>> texts;
  texts.reserve(result.rows.size());
  for (const auto& row : result.rows) {
    std::vector<std::string> line;
    line.reserve(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(cell_text(row[i]));
      widths[i] = std::max(widths[i], line.back().size());
    }
    texts.push_back(std::move(line));
  }

  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    os << std::left << std::setw(static_cast<int>(widths[i]) + 2) << result.columns[i];
  }
  os << "\n";
  for (const auto& line : texts) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << std::left << std::setw(static_cast<int>(widths[i]) + 2)
         << (line[i].empty() ? "-" : line[i]);
    }
    os << "\n";
  }
  if (config.kind == ExperimentKind::oracle_check) {
    os << (result.oracle_all_passed ? "all checks passed\n" : "SOME CHECKS FAILED\n");
  }
}

}  // namespace specphot
