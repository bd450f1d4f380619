// specphot: continuum single-photon interference and protocol probabilities
// on sinc-discretized spectra, with a brute-force state-vector cross-check.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "specphot/config.hpp"
#include "specphot/errors.hpp"
#include "specphot/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitOracleCheckFailed = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string records_path;
  std::optional<std::uint64_t> seed;
};

int execute(const specphot::ExperimentConfig& config, const CommonArgs& args) {
  specphot::RunOptions options;
  options.seed_override = args.seed;
  options.warnings = &std::cerr;
  std::vector<specphot::ProtocolTrialRecord> records;
  if (!args.records_path.empty()) {
    if (config.kind != specphot::ExperimentKind::qbc) {
      throw specphot::ValidationError("--records: only supported for qbc runs");
    }
    if (config.sweep) {
      throw specphot::ValidationError("--records: only supported for non-sweep qbc runs");
    }
    options.capture_records = &records;
  }

  const specphot::SweepResult result = specphot::run(config, options);
  specphot::print_summary(std::cout, config, result);

  if (!args.out_path.empty()) {
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) {
      throw specphot::ValidationError("--out: cannot open '" + args.out_path + "' for writing");
    }
    specphot::write_csv(out, result);
  }
  if (!args.records_path.empty()) {
    std::ofstream out(args.records_path, std::ios::binary);
    if (!out) {
      throw specphot::ValidationError("--records: cannot open '" + args.records_path +
                                      "' for writing");
    }
    specphot::write_records_csv(out, records);
  }

  if (config.kind == specphot::ExperimentKind::oracle_check && !result.oracle_all_passed) {
    return kExitOracleCheckFailed;
  }
  return kExitOk;
}

void add_common_options(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* config_opt = cmd->add_option("--config", args.config_path, "experiment config (JSON)");
  if (config_required) config_opt->required();
  cmd->add_option("--out", args.out_path, "write results as CSV to this path");
  cmd->add_option("--seed", args.seed, "override the config seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuum single-photon interference & bit-commitment simulator"};
  app.require_subcommand(1);

  CommonArgs args;
  int oracle_trials = 100;
  int oracle_max_bins = 10;

  auto* mzi = app.add_subcommand("mzi", "Mach-Zehnder output probabilities");
  add_common_options(mzi, args, true);
  auto* hom = app.add_subcommand("hom", "two-photon coincidence probability");
  add_common_options(hom, args, true);
  auto* qbc = app.add_subcommand("qbc", "bit-commitment cheat detection");
  add_common_options(qbc, args, true);
  qbc->add_option("--records", args.records_path,
                  "write per-trial Monte-Carlo records as CSV (non-sweep runs)");
  auto* oracle_check =
      app.add_subcommand("oracle-check", "closed-form vs brute-force equivalence suite");
  add_common_options(oracle_check, args, false);
  oracle_check->add_option("--trials", oracle_trials, "randomized cases per check");
  oracle_check->add_option("--max-bins", oracle_max_bins, "bin-count ceiling for random grids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Flatten CLI11's exit-code zoo onto the documented contract
    // (0 for --help, 1 for anything malformed).
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    specphot::ExperimentConfig config;
    if (!args.config_path.empty()) {
      config = specphot::load_config(args.config_path);
    } else {
      config.kind = specphot::ExperimentKind::oracle_check;
    }

    const std::string expected = app.get_subcommands().front()->get_name();
    if (expected != specphot::kind_name(config.kind)) {
      throw specphot::ValidationError("config kind '" +
                                      std::string(specphot::kind_name(config.kind)) +
                                      "' does not match subcommand '" + expected + "'");
    }
    if (config.kind == specphot::ExperimentKind::oracle_check) {
      if (oracle_check->count("--trials") > 0) config.oracle_trials = oracle_trials;
      if (oracle_check->count("--max-bins") > 0) config.oracle_max_bins = oracle_max_bins;
      if (config.oracle_trials < 1) {
        throw specphot::ValidationError("--trials: must be >= 1");
      }
      if (config.oracle_max_bins < 1) {
        throw specphot::ValidationError("--max-bins: must be >= 1");
      }
    }
    return execute(config, args);
  } catch (const specphot::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const specphot::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
