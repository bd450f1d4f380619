#ifndef SPECPHOT_CONFIG_HPP
#define SPECPHOT_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "specphot/devices.hpp"
#include "specphot/spectral.hpp"

namespace specphot {

enum class ExperimentKind { mzi, hom, qbc, oracle_check };

// Linear sweep over one scalar numeric leaf of the config, endpoints
// inclusive ("theta.slope", "spectrum_2.center", ...).
struct SweepSpec {
  std::string parameter;
  double start;
  double stop;
  int steps;
};

struct QbcParams {
  double omega_0;
  int committed_bit = 0;
  bool cheat = true;
  long trials = 0;  // 0 = closed form only, no Monte Carlo
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  ExperimentKind kind;
  std::optional<FrequencyGrid> grid;

  std::optional<SpectralShape> spectrum;    // mzi, hom, qbc (detuning shape)
  std::optional<SpectralShape> spectrum_2;  // hom only
  std::optional<FrequencyResponse> phi_a;   // mzi
  std::optional<FrequencyResponse> phi_b;   // mzi
  std::optional<FrequencyResponse> theta;   // hom
  std::optional<FrequencyResponse> rotator; // qbc
  std::optional<QbcParams> qbc;

  std::optional<SweepSpec> sweep;

  int oracle_trials = 100;  // oracle-check knobs
  int oracle_max_bins = 10;

  // Original document; sweeps re-materialize the config from this with one
  // leaf patched per step.
  std::string raw_json;
};

// Parse + validate. Diagnostics name the offending key and constraint;
// failures throw ValidationError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

const char* kind_name(ExperimentKind kind);

}  // namespace specphot

#endif
