#ifndef SPECPHOT_INTERFERENCE_HPP
#define SPECPHOT_INTERFERENCE_HPP

#include <vector>

#include "specphot/devices.hpp"
#include "specphot/spectral.hpp"

namespace specphot {

// Per-bin state at the Mach-Zehnder output. Output "a" is the bright port
// of the balanced interferometer: with equal arm phases the photon leaves
// there with certainty.
struct MziBin {
  int bin;
  double common_phase;     // (phi_A + phi_B)/2 at k*omega_s
  double half_difference;  // (phi_A - phi_B)/2 at k*omega_s
  cplx amp_a;              // i e^{i common} cos(half_difference) c_k
  cplx amp_b;              // i e^{i common} sin(half_difference) c_k
};

struct MziOutputState {
  FrequencyGrid grid;
  std::vector<MziBin> bins;
};

struct OutputProbabilities {
  double p_a;
  double p_b;
};

// Single photon through a balanced MZI with per-arm phase responses.
MziOutputState mzi_output_state(const SpectralAmplitude& s, const FrequencyResponse& phi_a,
                                const FrequencyResponse& phi_b);

// p_a = sum cos^2(half_difference_k) |c_k|^2 and the sin^2 complement.
// A refined grid over the same span converges to the continuum integrals.
OutputProbabilities mzi_probabilities(const SpectralAmplitude& s, const FrequencyResponse& phi_a,
                                      const FrequencyResponse& phi_b);

// Two-photon coincidence probability after a frequency-dependent beam
// splitter with transmittance cos(theta(omega)):
//
//   sum_{k != l} |c_k d_l|^2 [cos^2 t_k cos^2 t_l + sin^2 t_k sin^2 t_l]
//     + sum_k |c_k d_k|^2 cos^2(2 t_k)
//
// This closed form drops the k != l exchange cross-term, so for
// overlapping spectra it exceeds the full two-photon value (the
// brute-force simulator reports both; see oracle_hom).
double hom_coincidence(const SpectralAmplitude& s, const SpectralAmplitude& t,
                       const FrequencyResponse& theta);

// Balanced, frequency-flat splitter special case:
// 1/2 - (1/2) same_bin_overlap(s, t).
double hom_balanced(const SpectralAmplitude& s, const SpectralAmplitude& t);

}  // namespace specphot

#endif
