#ifndef SPECPHOT_RUNNER_HPP
#define SPECPHOT_RUNNER_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "specphot/config.hpp"
#include "specphot/qbc.hpp"

namespace specphot {

// One CSV cell; monostate renders as the empty field.
using Cell = std::variant<std::monostate, double, long long, std::uint64_t, std::string>;

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool oracle_all_passed = true;  // meaningful for oracle-check runs
};

struct RunOptions {
  std::optional<std::uint64_t> seed_override;  // replaces the config seed
  std::ostream* warnings = nullptr;            // truncation notes, if set
  // Non-sweep qbc runs with trials > 0 deposit their trial records here.
  std::vector<ProtocolTrialRecord>* capture_records = nullptr;
};

// Executes the experiment; sweeps produce one row per step, in step order,
// everything else a single row. Monte-Carlo sub-seeds per sweep step derive
// deterministically from (seed, step index).
SweepResult run(const ExperimentConfig& config, const RunOptions& options = {});

// Probabilities with 12 significant digits, trailing zeros trimmed.
std::string format_number(double value);

// Fixed header row + one line per result row.
void write_csv(std::ostream& os, const SweepResult& result);

// Human-readable table for stdout.
void print_summary(std::ostream& os, const ExperimentConfig& config, const SweepResult& result);

}  // namespace specphot

#endif
