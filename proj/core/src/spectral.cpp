#include "specphot/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "specphot/errors.hpp"

namespace specphot {

namespace {

std::string describe(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

FrequencyGrid::FrequencyGrid(double omega_s, int n_bins) : omega_s_(omega_s), n_bins_(n_bins) {
  if (!(omega_s > 0.0) || !std::isfinite(omega_s)) {
    throw ValidationError("grid.omega_s: must be finite and > 0, got " + describe(omega_s));
  }
  if (n_bins < 1) {
    throw ValidationError("grid.n_bins: must be >= 1, got " + std::to_string(n_bins));
  }
}

void validate(const SpectralShape& shape) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GaussianShape>) {
          if (!(s.std_dev > 0.0)) {
            throw ValidationError("shape.std: Gaussian std must be > 0");
          }
        } else if constexpr (std::is_same_v<T, LorentzianShape>) {
          if (!(s.half_width > 0.0)) {
            throw ValidationError("shape.half_width: Lorentzian half-width must be > 0");
          }
        } else if constexpr (std::is_same_v<T, RectangularShape>) {
          if (!(s.low < s.high)) {
            throw ValidationError("shape.low/high: Rectangular requires low < high");
          }
        } else {
          if (s.points.size() < 2) {
            throw ValidationError("shape.points: table needs at least two samples");
          }
          for (std::size_t i = 1; i < s.points.size(); ++i) {
            if (!(s.points[i - 1].first < s.points[i].first)) {
              throw ValidationError("shape.points: frequencies must be strictly increasing");
            }
          }
          bool any_nonzero = false;
          for (const auto& [f, v] : s.points) {
            (void)f;
            if (v != cplx{0.0, 0.0}) any_nonzero = true;
          }
          if (!any_nonzero) {
            throw ValidationError("shape.points: all samples are zero");
          }
        }
      },
      shape);
}

cplx evaluate(const SpectralShape& shape, double omega) {
  return std::visit(
      [omega](const auto& s) -> cplx {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GaussianShape>) {
          // |sigma|^2 is the normal density N(center, std^2).
          const double norm = std::pow(2.0 * std::numbers::pi * s.std_dev * s.std_dev, -0.25);
          const double u = (omega - s.center) / s.std_dev;
          return {norm * std::exp(-u * u / 4.0), 0.0};
        } else if constexpr (std::is_same_v<T, LorentzianShape>) {
          // |sigma|^2 = (gamma/pi) / ((omega-center)^2 + gamma^2).
          const double d = omega - s.center;
          return {std::sqrt(s.half_width / std::numbers::pi / (d * d + s.half_width * s.half_width)),
                  0.0};
        } else if constexpr (std::is_same_v<T, RectangularShape>) {
          if (omega < s.low || omega > s.high) return {0.0, 0.0};
          return {1.0 / std::sqrt(s.high - s.low), 0.0};
        } else {
          const auto& pts = s.points;
          if (pts.empty() || omega < pts.front().first || omega > pts.back().first) {
            return {0.0, 0.0};
          }
          auto it = std::lower_bound(
              pts.begin(), pts.end(), omega,
              [](const std::pair<double, cplx>& p, double w) { return p.first < w; });
          if (it->first == omega) return it->second;
          const auto& hi = *it;
          const auto& lo = *(it - 1);
          const double t = (omega - lo.first) / (hi.first - lo.first);
          return lo.second + t * (hi.second - lo.second);
        }
      },
      shape);
}

double l2_norm_squared(const SpectralShape& shape) {
  if (const auto* table = std::get_if<TableShape>(&shape)) {
    // |sigma|^2 is piecewise quadratic under linear interpolation; Simpson
    // integrates each segment exactly.
    KahanSum total;
    const auto& pts = table->points;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double h = pts[i].first - pts[i - 1].first;
      const cplx mid = 0.5 * (pts[i - 1].second + pts[i].second);
      const double f0 = std::norm(pts[i - 1].second);
      const double fm = std::norm(mid);
      const double f1 = std::norm(pts[i].second);
      total.add(h / 6.0 * (f0 + 4.0 * fm + f1));
    }
    return total.value();
  }
  return 1.0;
}

SpectralAmplitude SpectralAmplitude::normalized(FrequencyGrid grid, std::vector<cplx> amplitudes) {
  if (amplitudes.size() != static_cast<std::size_t>(grid.n_bins())) {
    throw ValidationError("amplitudes: length " + std::to_string(amplitudes.size()) +
                          " does not match grid.n_bins = " + std::to_string(grid.n_bins()));
  }
  KahanSum norm;
  for (const cplx& c : amplitudes) norm.add(std::norm(c));
  if (std::abs(norm.value() - 1.0) > 1e-9) {
    throw ValidationError("amplitudes: sum |c_k|^2 = " + describe(norm.value()) +
                          " deviates from 1 by more than 1e-9");
  }
  return SpectralAmplitude(grid, std::move(amplitudes));
}

SpectralAmplitude SpectralAmplitude::raw(FrequencyGrid grid, std::vector<cplx> amplitudes) {
  if (amplitudes.size() != static_cast<std::size_t>(grid.n_bins())) {
    throw ValidationError("amplitudes: length " + std::to_string(amplitudes.size()) +
                          " does not match grid.n_bins = " + std::to_string(grid.n_bins()));
  }
  return SpectralAmplitude(grid, std::move(amplitudes));
}

Discretized discretize(const SpectralShape& shape, const FrequencyGrid& grid) {
  validate(shape);
  std::vector<cplx> c(static_cast<std::size_t>(grid.n_bins()));
  const double root_spacing = std::sqrt(grid.omega_s());
  KahanSum mass;
  for (int k = 1; k <= grid.n_bins(); ++k) {
    const cplx v = evaluate(shape, grid.bin_frequency(k)) * root_spacing;
    c[static_cast<std::size_t>(k) - 1] = v;
    mass.add(std::norm(v));
  }
  const double raw_mass = mass.value();
  if (raw_mass == 0.0) {
    throw ValidationError("empty spectrum: shape support misses the grid entirely");
  }
  const double inv = 1.0 / std::sqrt(raw_mass);
  for (cplx& v : c) v *= inv;
  return Discretized{SpectralAmplitude::raw(grid, std::move(c)),
                     raw_mass / l2_norm_squared(shape)};
}

double check_normalization(const SpectralAmplitude& s) {
  KahanSum sum;
  for (const cplx& c : s.amplitudes()) sum.add(std::norm(c));
  return sum.value();
}

cplx reconstruct(const SpectralAmplitude& s, double omega) {
  const double omega_s = s.grid().omega_s();
  const double root_spacing = std::sqrt(omega_s);
  cplx acc{0.0, 0.0};
  for (int k = 1; k <= s.grid().n_bins(); ++k) {
    // Same k*omega_s expression as bin_frequency, so an on-grid probe
    // cancels exactly and the sinc snap fires.
    const double w = sinc((omega - s.grid().bin_frequency(k)) / omega_s);
    if (w != 0.0) {
      acc += (s.amplitude(k) / root_spacing) * w;
    }
  }
  return acc;
}

namespace {

void require_same_grid(const SpectralAmplitude& s, const SpectralAmplitude& t) {
  if (!(s.grid() == t.grid())) {
    throw ValidationError("spectra live on different grids");
  }
}

}  // namespace

cplx overlap(const SpectralAmplitude& s, const SpectralAmplitude& t) {
  require_same_grid(s, t);
  KahanSum re;
  KahanSum im;
  for (int k = 1; k <= s.grid().n_bins(); ++k) {
    const cplx term = std::conj(s.amplitude(k)) * t.amplitude(k);
    re.add(term.real());
    im.add(term.imag());
  }
  return {re.value(), im.value()};
}

double same_bin_overlap(const SpectralAmplitude& s, const SpectralAmplitude& t) {
  require_same_grid(s, t);
  KahanSum sum;
  for (int k = 1; k <= s.grid().n_bins(); ++k) {
    sum.add(std::norm(s.amplitude(k) * t.amplitude(k)));
  }
  return sum.value();
}

}  // namespace specphot
