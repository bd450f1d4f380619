#ifndef SPECPHOT_SPECTRAL_HPP
#define SPECPHOT_SPECTRAL_HPP

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "specphot/numerics.hpp"

namespace specphot {

// Uniform positive-frequency grid. Bin k (1-based) sits at k * omega_s;
// there is no DC bin.
class FrequencyGrid {
 public:
  FrequencyGrid(double omega_s, int n_bins);

  double omega_s() const { return omega_s_; }
  int n_bins() const { return n_bins_; }
  double bin_frequency(int k) const { return static_cast<double>(k) * omega_s_; }

  bool operator==(const FrequencyGrid&) const = default;

 private:
  double omega_s_;
  int n_bins_;
};

// Spectral-amplitude families sigma(omega). The analytic families are
// unit-L2-norm by construction, i.e. the *intensity* |sigma|^2 integrates
// to 1 (Gaussian: normal density of the given std; Lorentzian: HWHM =
// half_width). Table shapes are linearly interpolated between samples,
// zero outside, and carry whatever norm the samples imply.
struct GaussianShape {
  double center;
  double std_dev;
};
struct LorentzianShape {
  double center;
  double half_width;
};
struct RectangularShape {
  double low;
  double high;
};
struct TableShape {
  std::vector<std::pair<double, cplx>> points;  // strictly increasing frequency
};

using SpectralShape = std::variant<GaussianShape, LorentzianShape, RectangularShape, TableShape>;

// Throws ValidationError on non-positive widths, low >= high, or an
// unusable table (fewer than two points, unordered, all-zero).
void validate(const SpectralShape& shape);

// sigma(omega) for the shape; analytic families are real-valued.
cplx evaluate(const SpectralShape& shape, double omega);

// Integral of |sigma|^2 over the real line. Exactly 1 for the analytic
// families; computed from the interpolant for tables.
double l2_norm_squared(const SpectralShape& shape);

// A discretized single-photon spectrum: dimensionless per-bin amplitudes
// c_k = sigma(k omega_s) sqrt(omega_s) with sum |c_k|^2 = 1.
class SpectralAmplitude {
 public:
  // Enforces sum |c_k|^2 = 1 within 1e-9.
  static SpectralAmplitude normalized(FrequencyGrid grid, std::vector<cplx> amplitudes);

  // No normalization check; for diagnostics and norm queries only.
  static SpectralAmplitude raw(FrequencyGrid grid, std::vector<cplx> amplitudes);

  const FrequencyGrid& grid() const { return grid_; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  cplx amplitude(int k) const { return amplitudes_[static_cast<std::size_t>(k) - 1]; }  // 1-based

 private:
  SpectralAmplitude(FrequencyGrid grid, std::vector<cplx> amplitudes)
      : grid_(grid), amplitudes_(std::move(amplitudes)) {}

  FrequencyGrid grid_;
  std::vector<cplx> amplitudes_;
};

struct Discretized {
  SpectralAmplitude amplitude;
  // sum_k |sigma(k omega_s)|^2 omega_s / ||sigma||^2 before renormalization;
  // 1 - sampled_mass is the truncated mass (support missed by the grid).
  double sampled_mass;
};

// Sample the shape on the grid and renormalize exactly. Throws
// ValidationError if every sample is zero ("empty spectrum").
Discretized discretize(const SpectralShape& shape, const FrequencyGrid& grid);

// sum |c_k|^2; pure query, works on raw amplitudes too.
double check_normalization(const SpectralAmplitude& s);

// Sinc-basis interpolation sum_k (c_k / sqrt(omega_s)) sinc((omega - k omega_s)/omega_s).
// Exact at sample points.
cplx reconstruct(const SpectralAmplitude& s, double omega);

// Inner product sum_k conj(c_k) d_k. Grids must match.
cplx overlap(const SpectralAmplitude& s, const SpectralAmplitude& t);

// sum_k |c_k d_k|^2, the same-bin two-photon weight. Grids must match.
double same_bin_overlap(const SpectralAmplitude& s, const SpectralAmplitude& t);

}  // namespace specphot

#endif
