#include "specphot/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "specphot/errors.hpp"
#include "specphot/qbc.hpp"

namespace specphot {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ValidationError(path + ": " + message);
}

const json& require_key(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required key");
  return *it;
}

double get_number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require_key(obj, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

long get_integer(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require_key(obj, key, path);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<long>();
}

void check_allowed_keys(const json& obj, const std::set<std::string>& allowed,
                        const std::string& path) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      fail(path.empty() ? item.key() : path + "." + item.key(),
           "unexpected key for this experiment kind");
    }
  }
}

SpectralShape parse_shape(const json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "expected an object");
  const json& kind = require_key(node, "shape", path);
  if (!kind.is_string()) fail(path + ".shape", "expected a string");
  const std::string name = kind.get<std::string>();
  SpectralShape shape;
  if (name == "gaussian") {
    check_allowed_keys(node, {"shape", "center", "std"}, path);
    shape = GaussianShape{get_number(node, "center", path), get_number(node, "std", path)};
  } else if (name == "lorentzian") {
    check_allowed_keys(node, {"shape", "center", "half_width"}, path);
    shape =
        LorentzianShape{get_number(node, "center", path), get_number(node, "half_width", path)};
  } else if (name == "rectangular") {
    check_allowed_keys(node, {"shape", "low", "high"}, path);
    shape = RectangularShape{get_number(node, "low", path), get_number(node, "high", path)};
  } else if (name == "table") {
    check_allowed_keys(node, {"shape", "points"}, path);
    const json& points = require_key(node, "points", path);
    if (!points.is_array()) fail(path + ".points", "expected an array of [frequency, re, im]");
    TableShape table;
    for (const auto& p : points) {
      if (!p.is_array() || (p.size() != 2 && p.size() != 3)) {
        fail(path + ".points", "each entry must be [frequency, re] or [frequency, re, im]");
      }
      for (const auto& component : p) {
        if (!component.is_number()) fail(path + ".points", "entries must be numeric");
      }
      const double im = p.size() == 3 ? p[2].get<double>() : 0.0;
      table.points.emplace_back(p[0].get<double>(), cplx{p[1].get<double>(), im});
    }
    shape = std::move(table);
  } else {
    fail(path + ".shape", "unknown shape '" + name +
                              "' (expected gaussian|lorentzian|rectangular|table)");
  }
  try {
    validate(shape);
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
  return shape;
}

FrequencyResponse parse_response(const json& node, const FrequencyGrid& grid,
                                 const std::string& path) {
  if (!node.is_object()) fail(path, "expected an object");
  const json& kind = require_key(node, "kind", path);
  if (!kind.is_string()) fail(path + ".kind", "expected a string");
  const std::string name = kind.get<std::string>();
  try {
    if (name == "constant") {
      check_allowed_keys(node, {"kind", "value"}, path);
      return ConstantResponse{get_number(node, "value", path)};
    }
    if (name == "linear") {
      check_allowed_keys(node, {"kind", "value_at_ref", "slope", "ref_frequency"}, path);
      return LinearDetuningResponse{get_number(node, "value_at_ref", path),
                                    get_number(node, "slope", path),
                                    get_number(node, "ref_frequency", path)};
    }
    if (name == "fiber") {
      check_allowed_keys(node, {"kind", "beta", "beta2", "beta3", "length", "carrier"}, path);
      return FiberDispersionResponse{get_number(node, "beta", path),
                                     get_number(node, "beta2", path),
                                     get_number(node, "beta3", path),
                                     get_number(node, "length", path),
                                     get_number(node, "carrier", path)};
    }
    if (name == "sampled") {
      check_allowed_keys(node, {"kind", "values"}, path);
      const json& values = require_key(node, "values", path);
      if (!values.is_array()) fail(path + ".values", "expected an array of numbers");
      std::vector<double> v;
      v.reserve(values.size());
      for (const auto& x : values) {
        if (!x.is_number()) fail(path + ".values", "entries must be numeric");
        v.push_back(x.get<double>());
      }
      return SampledResponse{grid, std::move(v)};
    }
  } catch (const ValidationError& e) {
    if (std::string(e.what()).starts_with(path)) throw;
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown response kind '" + name +
                           "' (expected constant|linear|fiber|sampled)");
}

FrequencyGrid parse_grid(const json& root) {
  const json& node = require_key(root, "grid", "");
  check_allowed_keys(node, {"omega_s", "n_bins"}, "grid");
  const double omega_s = get_number(node, "omega_s", "grid");
  const long n_bins = get_integer(node, "n_bins", "grid");
  if (n_bins > 10'000'000) fail("grid.n_bins", "unreasonably large bin count");
  try {
    return FrequencyGrid(omega_s, static_cast<int>(n_bins));
  } catch (const ValidationError& e) {
    fail("grid", e.what());
  }
}

SweepSpec parse_sweep(const json& root) {
  const json& node = root.at("sweep");
  check_allowed_keys(node, {"parameter", "start", "stop", "steps"}, "sweep");
  const json& parameter = require_key(node, "parameter", "sweep");
  if (!parameter.is_string()) fail("sweep.parameter", "expected a string");
  SweepSpec sweep{parameter.get<std::string>(), get_number(node, "start", "sweep"),
                  get_number(node, "stop", "sweep"),
                  static_cast<int>(get_integer(node, "steps", "sweep"))};
  if (sweep.steps < 1) fail("sweep.steps", "must be >= 1");
  if (sweep.parameter.empty()) fail("sweep.parameter", "must not be empty");

  // The path must resolve to a scalar numeric leaf of the document.
  std::string pointer = "/";
  for (const char c : sweep.parameter) pointer += (c == '.') ? '/' : c;
  const auto ptr = json::json_pointer(pointer);
  if (!root.contains(ptr)) {
    fail("sweep.parameter", "'" + sweep.parameter + "' does not name a config field");
  }
  if (!root.at(ptr).is_number()) {
    fail("sweep.parameter", "'" + sweep.parameter + "' is not a scalar numeric field");
  }
  return sweep;
}

}  // namespace

const char* kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::mzi: return "mzi";
    case ExperimentKind::hom: return "hom";
    case ExperimentKind::qbc: return "qbc";
    case ExperimentKind::oracle_check: return "oracle-check";
  }
  return "?";
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ValidationError("config: top level must be an object");

  const json& kind_node = require_key(root, "kind", "");
  if (!kind_node.is_string()) fail("kind", "expected a string");
  const std::string kind_str = kind_node.get<std::string>();

  ExperimentConfig config;
  config.raw_json = json_text;

  if (kind_str == "mzi") {
    config.kind = ExperimentKind::mzi;
    check_allowed_keys(root, {"kind", "grid", "spectrum", "phi_a", "phi_b", "sweep"}, "");
    config.grid = parse_grid(root);
    config.spectrum = parse_shape(require_key(root, "spectrum", ""), "spectrum");
    config.phi_a = parse_response(require_key(root, "phi_a", ""), *config.grid, "phi_a");
    config.phi_b = parse_response(require_key(root, "phi_b", ""), *config.grid, "phi_b");
    discretize(*config.spectrum, *config.grid);  // surfaces "empty spectrum" at load
  } else if (kind_str == "hom") {
    config.kind = ExperimentKind::hom;
    check_allowed_keys(root, {"kind", "grid", "spectrum", "spectrum_2", "theta", "sweep"}, "");
    config.grid = parse_grid(root);
    config.spectrum = parse_shape(require_key(root, "spectrum", ""), "spectrum");
    config.spectrum_2 = parse_shape(require_key(root, "spectrum_2", ""), "spectrum_2");
    config.theta = parse_response(require_key(root, "theta", ""), *config.grid, "theta");
    discretize(*config.spectrum, *config.grid);
    discretize(*config.spectrum_2, *config.grid);
  } else if (kind_str == "qbc") {
    config.kind = ExperimentKind::qbc;
    check_allowed_keys(root,
                       {"kind", "grid", "spectrum", "rotator", "omega_0", "committed_bit",
                        "cheat", "trials", "seed", "sweep"},
                       "");
    config.grid = parse_grid(root);
    config.spectrum = parse_shape(require_key(root, "spectrum", ""), "spectrum");
    config.rotator = parse_response(require_key(root, "rotator", ""), *config.grid, "rotator");

    QbcParams params;
    params.omega_0 = get_number(root, "omega_0", "");
    if (root.contains("committed_bit")) {
      const long bit = get_integer(root, "committed_bit", "");
      if (bit != 0 && bit != 1) fail("committed_bit", "must be 0 or 1");
      params.committed_bit = static_cast<int>(bit);
    }
    if (root.contains("cheat")) {
      if (!root.at("cheat").is_boolean()) fail("cheat", "expected a boolean");
      params.cheat = root.at("cheat").get<bool>();
    }
    if (root.contains("trials")) {
      const long trials = get_integer(root, "trials", "");
      if (trials < 0) fail("trials", "must be >= 0 (0 disables Monte Carlo)");
      params.trials = trials;
    }
    if (root.contains("seed")) {
      const json& s = root.at("seed");
      if (!s.is_number_integer()) fail("seed", "expected a non-negative integer");
      if (!s.is_number_unsigned() && s.get<long long>() < 0) {
        fail("seed", "expected a non-negative integer");
      }
      params.seed = s.get<std::uint64_t>();
    }
    config.qbc = params;
    // Surfaces incommensurability and empty support at load.
    make_bell_biphoton(*config.spectrum, params.omega_0, *config.grid);
  } else if (kind_str == "oracle-check") {
    config.kind = ExperimentKind::oracle_check;
    check_allowed_keys(root, {"kind", "trials", "max_bins", "seed"}, "");
    if (root.contains("trials")) {
      const long trials = get_integer(root, "trials", "");
      if (trials < 1) fail("trials", "must be >= 1");
      config.oracle_trials = static_cast<int>(trials);
    }
    if (root.contains("max_bins")) {
      const long bins = get_integer(root, "max_bins", "");
      if (bins < 1) fail("max_bins", "must be >= 1");
      config.oracle_max_bins = static_cast<int>(bins);
    }
  } else {
    fail("kind", "unknown kind '" + kind_str + "' (expected mzi|hom|qbc|oracle-check)");
  }

  if (root.contains("sweep")) {
    config.sweep = parse_sweep(root);
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("config: cannot open file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace specphot
