#include "specphot/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "specphot/errors.hpp"

namespace specphot {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// Mode ids are dense non-negative ints; configurations pack the (sorted)
// photon mode ids into one 64-bit key with 0 = empty slot.
int mode_id(const ModeLabel& m, int n_bins) {
  const int spatial = m.spatial == Spatial::a ? 0 : 1;
  const int pol = m.pol == Polarization::H ? 0 : 1;
  return (spatial * n_bins + (m.bin - 1)) * 2 + pol;
}

ModeLabel mode_from_id(int id, int n_bins) {
  const int pol = id & 1;
  const int rest = id >> 1;
  const int bin = rest % n_bins + 1;
  const int spatial = rest / n_bins;
  return ModeLabel{spatial == 0 ? Spatial::a : Spatial::b, bin,
                   pol == 0 ? Polarization::H : Polarization::V};
}

std::uint64_t pack_ids(int lo, int hi) {
  // slots store id+1; 0 means "no photon"; empties sort first.
  return (static_cast<std::uint64_t>(lo + 1) << 24) | static_cast<std::uint64_t>(hi + 1);
}

struct UnpackedKey {
  int count;
  int ids[2];
};

UnpackedKey unpack_key(std::uint64_t key) {
  const int hi = static_cast<int>(key & 0xFFFFFFull) - 1;
  const int lo = static_cast<int>(key >> 24) - 1;
  UnpackedKey out{0, {-1, -1}};
  if (lo >= 0) out.ids[out.count++] = lo;
  if (hi >= 0) out.ids[out.count++] = hi;
  return out;
}

std::uint64_t key_for(int count, int id0, int id1) {
  if (count == 0) return pack_ids(-1, -1);
  if (count == 1) return pack_ids(-1, id0);
  return pack_ids(std::min(id0, id1), std::max(id0, id1));
}

void require_capacity(int n_bins, const char* what) {
  if (n_bins > kOracleMaxBins) {
    throw CapacityError(std::string(what) + ": " + std::to_string(n_bins) +
                        " bins exceed the oracle limit of " + std::to_string(kOracleMaxBins));
  }
}

}  // namespace

namespace {

// Keys pack two mode ids into 24-bit fields.
constexpr int kMaxPackableBins = (1 << 22) - 1;

}  // namespace

FockState FockState::vacuum(const FrequencyGrid& grid) {
  FockState st = zero(grid);
  st.amplitudes_[pack_ids(-1, -1)] = cplx{1.0, 0.0};
  return st;
}

FockState FockState::zero(const FrequencyGrid& grid) {
  if (grid.n_bins() > kMaxPackableBins) {
    throw CapacityError("fock state: " + std::to_string(grid.n_bins()) +
                        " bins exceed the representable mode space");
  }
  return FockState(grid);
}

double FockState::norm_squared() const {
  KahanSum sum;
  for (const auto& [key, amp] : amplitudes_) {
    (void)key;
    sum.add(std::norm(amp));
  }
  return sum.value();
}

std::uint64_t FockState::pack(std::initializer_list<ModeLabel> photons) const {
  if (photons.size() > 2) {
    throw ValidationError("fock state: configurations hold at most two photons");
  }
  int ids[2] = {-1, -1};
  int count = 0;
  for (const ModeLabel& m : photons) {
    if (m.bin < 1 || m.bin > grid_.n_bins()) {
      throw ValidationError("fock state: bin " + std::to_string(m.bin) + " outside [1, " +
                            std::to_string(grid_.n_bins()) + "]");
    }
    ids[count++] = mode_id(m, grid_.n_bins());
  }
  return key_for(count, ids[0], ids[1]);
}

cplx FockState::amplitude(std::initializer_list<ModeLabel> photons) const {
  const auto it = amplitudes_.find(pack(photons));
  return it == amplitudes_.end() ? cplx{0.0, 0.0} : it->second;
}

void FockState::add_amplitude(std::initializer_list<ModeLabel> photons, cplx value) {
  amplitudes_[pack(photons)] += value;
}

void FockState::normalize() {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) {
    throw ValidationError("fock state: cannot normalize the zero vector");
  }
  for (auto& [key, amp] : amplitudes_) {
    (void)key;
    amp /= n;
  }
}

std::vector<FockState::ConfigView> FockState::configurations() const {
  std::vector<ConfigView> out;
  out.reserve(amplitudes_.size());
  for (const auto& [key, amp] : amplitudes_) {
    const UnpackedKey u = unpack_key(key);
    ConfigView view{u.count, {}, amp};
    for (int i = 0; i < u.count; ++i) view.photons[i] = mode_from_id(u.ids[i], grid_.n_bins());
    out.push_back(view);
  }
  return out;
}

FockState FockState::apply_mode_map(const ModeMap& map) const {
  FockState out(grid_);
  out.amplitudes_.reserve(amplitudes_.size() * 4);

  // Images are per-mode; cache them (the map is pure).
  std::unordered_map<int, std::vector<std::pair<int, cplx>>> images;
  const auto image_of = [&](int id) -> const std::vector<std::pair<int, cplx>>& {
    auto it = images.find(id);
    if (it == images.end()) {
      std::vector<std::pair<int, cplx>> img;
      for (const ModeImage& mi : map(mode_from_id(id, grid_.n_bins()))) {
        img.emplace_back(mode_id(mi.mode, grid_.n_bins()), mi.coeff);
      }
      it = images.emplace(id, std::move(img)).first;
    }
    return it->second;
  };

  for (const auto& [key, amp] : amplitudes_) {
    if (amp == cplx{0.0, 0.0}) continue;
    const UnpackedKey u = unpack_key(key);
    if (u.count == 0) {
      out.amplitudes_[key] += amp;
      continue;
    }
    if (u.count == 1) {
      for (const auto& [j, coeff] : image_of(u.ids[0])) {
        out.amplitudes_[key_for(1, j, -1)] += amp * coeff;
      }
      continue;
    }

    // Two photons. Write the source as a creation-operator product (with
    // 1/sqrt(2) when both photons share one mode), expand the images over
    // ordered target pairs; a doubly hit target picks up the bosonic sqrt(2).
    const bool same_source = u.ids[0] == u.ids[1];
    const auto img0 = image_of(u.ids[0]);
    const auto img1 = image_of(u.ids[1]);
    const double source_factor = same_source ? 1.0 / kSqrt2 : 1.0;
    for (const auto& [j0, coeff0] : img0) {
      for (const auto& [j1, coeff1] : img1) {
        const double target_factor = j0 == j1 ? kSqrt2 : 1.0;
        out.amplitudes_[key_for(2, j0, j1)] +=
            amp * coeff0 * coeff1 * source_factor * target_factor;
      }
    }
  }

  // Drop exact zeros produced by cancellation to keep states sparse.
  for (auto it = out.amplitudes_.begin(); it != out.amplitudes_.end();) {
    if (it->second == cplx{0.0, 0.0}) {
      it = out.amplitudes_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

FockState inject_single_photon(const SpectralAmplitude& s, Spatial spatial) {
  FockState st = FockState::zero(s.grid());
  for (int k = 1; k <= s.grid().n_bins(); ++k) {
    const cplx c = s.amplitude(k);
    if (c != cplx{0.0, 0.0}) {
      st.add_amplitude({ModeLabel{spatial, k, Polarization::H}}, c);
    }
  }
  return st;
}

FockState two_photon_product(const SpectralAmplitude& in_a, const SpectralAmplitude& in_b) {
  if (!(in_a.grid() == in_b.grid())) {
    throw ValidationError("two_photon_product: spectra live on different grids");
  }
  FockState st = FockState::zero(in_a.grid());
  for (int k = 1; k <= in_a.grid().n_bins(); ++k) {
    const cplx c = in_a.amplitude(k);
    if (c == cplx{0.0, 0.0}) continue;
    for (int l = 1; l <= in_b.grid().n_bins(); ++l) {
      const cplx d = in_b.amplitude(l);
      if (d == cplx{0.0, 0.0}) continue;
      st.add_amplitude({ModeLabel{Spatial::a, k, Polarization::H},
                        ModeLabel{Spatial::b, l, Polarization::H}},
                       c * d);
    }
  }
  return st;
}

FockState apply_beam_splitter(const FockState& st, const FrequencyResponse& theta) {
  const FrequencyGrid& grid = st.grid();
  return st.apply_mode_map([&theta, &grid](const ModeLabel& m) {
    const double th = eval(theta, grid.bin_frequency(m.bin));
    const cplx trans{std::cos(th), 0.0};
    const cplx refl{0.0, std::sin(th)};
    const Spatial other = m.spatial == Spatial::a ? Spatial::b : Spatial::a;
    return std::vector<FockState::ModeImage>{{m, trans}, {ModeLabel{other, m.bin, m.pol}, refl}};
  });
}

FockState apply_phase(const FockState& st, Spatial spatial, const FrequencyResponse& phi) {
  const FrequencyGrid& grid = st.grid();
  return st.apply_mode_map([&phi, &grid, spatial](const ModeLabel& m) {
    if (m.spatial != spatial) {
      return std::vector<FockState::ModeImage>{{m, cplx{1.0, 0.0}}};
    }
    const double p = eval(phi, grid.bin_frequency(m.bin));
    return std::vector<FockState::ModeImage>{{m, std::polar(1.0, p)}};
  });
}

FockState apply_polarization_rotator(const FockState& st, Spatial spatial,
                                     const FrequencyResponse& theta) {
  const FrequencyGrid& grid = st.grid();
  return st.apply_mode_map([&theta, &grid, spatial](const ModeLabel& m) {
    if (m.spatial != spatial) {
      return std::vector<FockState::ModeImage>{{m, cplx{1.0, 0.0}}};
    }
    const double th = eval(theta, grid.bin_frequency(m.bin));
    const cplx c{std::cos(th), 0.0};
    const cplx s{std::sin(th), 0.0};
    const ModeLabel h{m.spatial, m.bin, Polarization::H};
    const ModeLabel v{m.spatial, m.bin, Polarization::V};
    if (m.pol == Polarization::H) {
      return std::vector<FockState::ModeImage>{{h, c}, {v, s}};
    }
    return std::vector<FockState::ModeImage>{{h, s}, {v, -c}};
  });
}

OutputProbabilities oracle_mzi(const SpectralAmplitude& s, const FrequencyResponse& phi_a,
                               const FrequencyResponse& phi_b) {
  require_capacity(s.grid().n_bins(), "oracle_mzi");
  FockState st = inject_single_photon(s, Spatial::a);
  st = apply_beam_splitter(st, balanced_bs_angle());
  st = apply_phase(st, Spatial::a, phi_a);
  st = apply_phase(st, Spatial::b, phi_b);
  st = apply_beam_splitter(st, balanced_bs_angle());

  KahanSum at_a;
  KahanSum at_b;
  for (const auto& cfg : st.configurations()) {
    if (cfg.photon_count != 1) continue;
    (cfg.photons[0].spatial == Spatial::a ? at_a : at_b).add(std::norm(cfg.amplitude));
  }
  // The interferometer's labeled output a is the final splitter's cross
  // port, where the photon emerges at zero phase difference.
  return OutputProbabilities{at_b.value(), at_a.value()};
}

HomProbabilities oracle_hom(const SpectralAmplitude& s, const SpectralAmplitude& t,
                            const FrequencyResponse& theta) {
  if (!(s.grid() == t.grid())) {
    throw ValidationError("oracle_hom: spectra live on different grids");
  }
  require_capacity(s.grid().n_bins(), "oracle_hom");

  FockState st = two_photon_product(s, t);
  st = apply_beam_splitter(st, theta);
  KahanSum coincidence;
  for (const auto& cfg : st.configurations()) {
    if (cfg.photon_count != 2) continue;
    const bool has_a = cfg.photons[0].spatial == Spatial::a || cfg.photons[1].spatial == Spatial::a;
    const bool has_b = cfg.photons[0].spatial == Spatial::b || cfg.photons[1].spatial == Spatial::b;
    if (has_a && has_b) coincidence.add(std::norm(cfg.amplitude));
  }

  // Literal index-sum evaluation of the closed form, as an independent
  // route (hom_coincidence uses the factorized equivalent).
  const int n = s.grid().n_bins();
  std::vector<double> cos2(static_cast<std::size_t>(n) + 1);
  std::vector<double> sin2(static_cast<std::size_t>(n) + 1);
  std::vector<double> cos_double(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k) {
    const double th = eval(theta, s.grid().bin_frequency(k));
    cos2[static_cast<std::size_t>(k)] = std::cos(th) * std::cos(th);
    sin2[static_cast<std::size_t>(k)] = std::sin(th) * std::sin(th);
    cos_double[static_cast<std::size_t>(k)] = std::cos(2.0 * th);
  }
  KahanSum closed_form;
  for (int k = 1; k <= n; ++k) {
    const double wk = std::norm(s.amplitude(k));
    if (wk == 0.0) continue;
    for (int l = 1; l <= n; ++l) {
      const double weight = wk * std::norm(t.amplitude(l));
      if (weight == 0.0) continue;
      if (k != l) {
        closed_form.add(weight * (cos2[static_cast<std::size_t>(k)] * cos2[static_cast<std::size_t>(l)] +
                            sin2[static_cast<std::size_t>(k)] * sin2[static_cast<std::size_t>(l)]));
      } else {
        closed_form.add(weight * cos_double[static_cast<std::size_t>(k)] *
                  cos_double[static_cast<std::size_t>(k)]);
      }
    }
  }
  return HomProbabilities{coincidence.value(), closed_form.value()};
}

double oracle_qbc(const BiphotonAmplitude& b, const FrequencyResponse& theta) {
  require_capacity(b.grid().n_bins(), "oracle_qbc");

  FockState st = FockState::zero(b.grid());
  const double inv_sqrt2 = 1.0 / kSqrt2;
  for (const auto& p : b.pairs()) {
    const int partner = b.m_index() - p.bin_alice;
    st.add_amplitude({ModeLabel{Spatial::a, p.bin_alice, Polarization::H},
                      ModeLabel{Spatial::b, partner, Polarization::H}},
                     p.amplitude * inv_sqrt2);
    st.add_amplitude({ModeLabel{Spatial::a, p.bin_alice, Polarization::V},
                      ModeLabel{Spatial::b, partner, Polarization::V}},
                     p.amplitude * inv_sqrt2);
  }

  st = apply_polarization_rotator(st, Spatial::a, theta);

  KahanSum same;
  for (const auto& cfg : st.configurations()) {
    if (cfg.photon_count != 2) continue;
    const ModeLabel& first = cfg.photons[0];
    const ModeLabel& second = cfg.photons[1];
    if (first.spatial == second.spatial) continue;
    if (first.pol == second.pol) same.add(std::norm(cfg.amplitude));
  }
  return same.value();
}

}  // namespace specphot
