#ifndef SPECPHOT_DEVICES_HPP
#define SPECPHOT_DEVICES_HPP

#include <variant>
#include <vector>

#include "specphot/spectral.hpp"

namespace specphot {

// Frequency-dependent device responses in radians: phase-modulator phases
// phi(omega) and beam-splitter/rotator angles theta(omega). All frequencies
// are angular [rad/s].

struct ConstantResponse {
  double value;
};

// value_at_ref + slope * (omega - ref_frequency)
struct LinearDetuningResponse {
  double value_at_ref;
  double slope;       // rad * s
  double ref_frequency;
};

// Dispersive-fiber phase, evaluated in detuning W = omega - carrier:
//   beta*L + (1/2) beta2 W^2 L - (1/6) beta3 W^3 L
// The cubic is a Taylor expansion about the carrier; evaluating it at
// absolute optical frequencies would be numerically meaningless.
struct FiberDispersionResponse {
  double beta;    // rad/m
  double beta2;   // s^2/m
  double beta3;   // s^3/m
  double length;  // m, >= 0
  double carrier; // rad/s
};

// Per-bin values with nearest-bin lookup (clamped at the grid edges, so
// evaluation is total over omega > 0). Downstream formulas only ever ask
// for grid frequencies k*omega_s, hence no interpolation.
struct SampledResponse {
  FrequencyGrid grid;
  std::vector<double> values;
};

// Value type over the response variants; add() cascades responses (e.g. a
// modulator followed by a fiber in the same interferometer arm).
class FrequencyResponse {
 public:
  FrequencyResponse(ConstantResponse r);             // NOLINT(google-explicit-constructor)
  FrequencyResponse(LinearDetuningResponse r);       // NOLINT(google-explicit-constructor)
  FrequencyResponse(FiberDispersionResponse r);      // NOLINT(google-explicit-constructor)
  FrequencyResponse(SampledResponse r);              // NOLINT(google-explicit-constructor)

  double operator()(double omega) const;

  friend FrequencyResponse add(const FrequencyResponse& r1, const FrequencyResponse& r2);
  friend double eval(const FrequencyResponse& r, double omega);

 private:
  struct Cascade {
    std::vector<FrequencyResponse> terms;
  };
  using Node = std::variant<ConstantResponse, LinearDetuningResponse, FiberDispersionResponse,
                            SampledResponse, Cascade>;

  explicit FrequencyResponse(Node node) : node_(std::move(node)) {}

  Node node_;
};

// Response value at omega. Throws ValidationError for omega <= 0.
double eval(const FrequencyResponse& r, double omega);

// Pointwise sum: eval(add(r1,r2), w) == eval(r1,w) + eval(r2,w). Throws if
// both operands are sampled on different grids.
FrequencyResponse add(const FrequencyResponse& r1, const FrequencyResponse& r2);

// The lossless balanced splitter angle: Constant(pi/4), i.e. transmittance
// cos(theta) = 1/sqrt(2).
FrequencyResponse balanced_bs_angle();

}  // namespace specphot

#endif
