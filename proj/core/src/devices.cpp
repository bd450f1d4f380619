#include "specphot/devices.hpp"

#include <cmath>
#include <numbers>

#include "specphot/errors.hpp"

namespace specphot {

namespace {

void validate_sampled(const SampledResponse& r) {
  if (r.values.size() != static_cast<std::size_t>(r.grid.n_bins())) {
    throw ValidationError("sampled response: values length " + std::to_string(r.values.size()) +
                          " does not match grid.n_bins = " + std::to_string(r.grid.n_bins()));
  }
}

double eval_sampled(const SampledResponse& r, double omega) {
  int k = static_cast<int>(std::lround(omega / r.grid.omega_s()));
  k = std::max(1, std::min(r.grid.n_bins(), k));
  return r.values[static_cast<std::size_t>(k) - 1];
}

}  // namespace

FrequencyResponse::FrequencyResponse(ConstantResponse r) : node_(r) {}

FrequencyResponse::FrequencyResponse(LinearDetuningResponse r) : node_(r) {}

FrequencyResponse::FrequencyResponse(FiberDispersionResponse r) : node_(r) {
  if (r.length < 0.0) {
    throw ValidationError("fiber response: length must be >= 0");
  }
}

FrequencyResponse::FrequencyResponse(SampledResponse r) : node_(std::move(r)) {
  validate_sampled(std::get<SampledResponse>(node_));
}

double FrequencyResponse::operator()(double omega) const { return eval(*this, omega); }

double eval(const FrequencyResponse& r, double omega) {
  if (!(omega > 0.0)) {
    throw ValidationError("response evaluation: omega must be > 0");
  }
  return std::visit(
      [omega](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ConstantResponse>) {
          return node.value;
        } else if constexpr (std::is_same_v<T, LinearDetuningResponse>) {
          return node.value_at_ref + node.slope * (omega - node.ref_frequency);
        } else if constexpr (std::is_same_v<T, FiberDispersionResponse>) {
          const double detuning = omega - node.carrier;
          return node.length * (node.beta + 0.5 * node.beta2 * detuning * detuning -
                                node.beta3 * detuning * detuning * detuning / 6.0);
        } else if constexpr (std::is_same_v<T, SampledResponse>) {
          return eval_sampled(node, omega);
        } else {
          double sum = 0.0;
          for (const auto& term : node.terms) sum += eval(term, omega);
          return sum;
        }
      },
      r.node_);
}

FrequencyResponse add(const FrequencyResponse& r1, const FrequencyResponse& r2) {
  const auto* s1 = std::get_if<SampledResponse>(&r1.node_);
  const auto* s2 = std::get_if<SampledResponse>(&r2.node_);
  if (s1 != nullptr && s2 != nullptr && !(s1->grid == s2->grid)) {
    throw ValidationError("add: sampled responses live on different grids");
  }
  FrequencyResponse::Cascade cascade;
  cascade.terms.reserve(2);
  cascade.terms.push_back(r1);
  cascade.terms.push_back(r2);
  return FrequencyResponse(FrequencyResponse::Node(std::move(cascade)));
}

FrequencyResponse balanced_bs_angle() {
  return FrequencyResponse(ConstantResponse{std::numbers::pi / 4.0});
}

}  // namespace specphot
