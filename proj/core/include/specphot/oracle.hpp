#ifndef SPECPHOT_ORACLE_HPP
#define SPECPHOT_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <unordered_map>
#include <vector>

#include "specphot/interference.hpp"
#include "specphot/qbc.hpp"

namespace specphot {

// Brute-force two-photon state-vector simulator over modes
// (spatial port) x (frequency bin) x (polarization). It verifies every
// closed-form probability by direct unitary evolution and projective
// measurement; capacity is capped so it stays exact and desk-scale.
inline constexpr int kOracleMaxBins = 64;

enum class Spatial : std::uint8_t { a, b };

struct ModeLabel {
  Spatial spatial;
  int bin;  // 1-based
  Polarization pol;
  bool operator==(const ModeLabel&) const = default;
};

// Sparse state over occupation configurations with total photon number <= 2.
class FockState {
 public:
  // Unit vacuum state.
  static FockState vacuum(const FrequencyGrid& grid);
  // Zero vector; starting point for builders.
  static FockState zero(const FrequencyGrid& grid);

  const FrequencyGrid& grid() const { return grid_; }
  double norm_squared() const;

  // Amplitude of the basis configuration holding exactly these photons
  // (0, 1 or 2 labels; two identical labels = a doubly occupied mode).
  cplx amplitude(std::initializer_list<ModeLabel> photons) const;

  // Adds `value` to the amplitude of the given configuration.
  void add_amplitude(std::initializer_list<ModeLabel> photons, cplx value);

  void normalize();

  struct ConfigView {
    int photon_count;      // 0, 1 or 2
    ModeLabel photons[2];  // photons[0..photon_count-1]; a doubly occupied
                           // mode appears twice
    cplx amplitude;
  };
  std::vector<ConfigView> configurations() const;

  // One-mode linear substitution on creation operators,
  //   a+_m -> sum_j coeff_j a+_{m_j},
  // extended to two-photon configurations with bosonic normalization. The
  // map must be (block-)unitary for norm preservation.
  struct ModeImage {
    ModeLabel mode;
    cplx coeff;
  };
  using ModeMap = std::function<std::vector<ModeImage>(const ModeLabel&)>;
  FockState apply_mode_map(const ModeMap& map) const;

 private:
  explicit FockState(const FrequencyGrid& grid) : grid_(grid) {}

  std::uint64_t pack(std::initializer_list<ModeLabel> photons) const;

  FrequencyGrid grid_;
  std::unordered_map<std::uint64_t, cplx> amplitudes_;
};

// sum_k c_k |one photon in (spatial, k, H)>.
FockState inject_single_photon(const SpectralAmplitude& s, Spatial spatial);

// sum_{k,l} c_k d_l |one photon in (a,k,H), one in (b,l,H)>.
FockState two_photon_product(const SpectralAmplitude& in_a, const SpectralAmplitude& in_b);

// Symmetric beam splitter: a+_k -> cos(t_k) a+_k + i sin(t_k) b+_k and
// b+_k -> i sin(t_k) a+_k + cos(t_k) b+_k, with t_k = theta(k w_s);
// polarization untouched.
FockState apply_beam_splitter(const FockState& st, const FrequencyResponse& theta);

// Phase modulator in one arm: each configuration gains exp(i n phi(k w_s))
// per photon count n in (spatial, k, *).
FockState apply_phase(const FockState& st, Spatial spatial, const FrequencyResponse& phi);

// Frequency-dependent NOT gate on one party's polarization:
// [[cos t, sin t], [sin t, -cos t]] at t = theta(k w_s).
FockState apply_polarization_rotator(const FockState& st, Spatial spatial,
                                     const FrequencyResponse& theta);

// Full MZI propagation: inject, balanced splitter, per-arm phases, balanced
// splitter, output marginals. Output "a" is the bright port (the photon
// leaves there when both arms carry equal phase). Throws CapacityError
// beyond kOracleMaxBins.
OutputProbabilities oracle_mzi(const SpectralAmplitude& s, const FrequencyResponse& phi_a,
                               const FrequencyResponse& phi_b);

struct HomProbabilities {
  double p_coin_full;   // from the complete evolved state (includes exchange
                        // interference between distinct bins)
  double p_coin_closed_form;  // the closed-form double sum evaluated literally
};

// Two photons, one per input port, through one frequency-dependent splitter;
// coincidence = at least one photon in each output port.
HomProbabilities oracle_hom(const SpectralAmplitude& s, const SpectralAmplitude& t,
                            const FrequencyResponse& theta);

// Builds the polarization-entangled pair state, applies the cheating gate to
// Alice's photon, and returns P(Alice outcome = Bob outcome) by projector
// summation.
double oracle_qbc(const BiphotonAmplitude& b, const FrequencyResponse& theta);

}  // namespace specphot

#endif
