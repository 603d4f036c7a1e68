#include "vbent/spin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "vbent/errors.hpp"

namespace vbent {

namespace {

void check_site(const PureState& psi, int i) {
  if (i < 1 || i > psi.sites())
    throw InvalidPair("site " + std::to_string(i) + " outside 1.." + std::to_string(psi.sites()));
}

void check_pair(const PureState& psi, int i, int j) {
  check_site(psi, i);
  check_site(psi, j);
  if (i == j) throw InvalidPair("pair requires two distinct sites, got i = j = " + std::to_string(i));
}

double weight_norm2(const CVector& amp) {
  double s = 0.0;
  for (const auto& a : amp) s += std::norm(a);
  return s;
}

// Basis reached by raising (delta = +1) or lowering (delta = -1) one spin.
BasisPtr shifted_basis(const SpinBasis& b, int delta) {
  if (!b.up_count()) return SpinBasis::full(b.sites());
  const int up = *b.up_count() + delta;
  if (up < 0 || up > b.sites()) return nullptr;
  return SpinBasis::sector(b.sites(), up);
}

}  // namespace

SpinBasis::SpinBasis(int n, std::optional<int> n_up) : n_(n), n_up_(n_up) {
  const Config dim = Config{1} << n;
  index_.assign(dim, -1);
  for (Config c = 0; c < dim; ++c) {
    if (n_up && std::popcount(c) != *n_up) continue;
    index_[c] = static_cast<std::int32_t>(states_.size());
    states_.push_back(c);
  }
}

std::shared_ptr<const SpinBasis> SpinBasis::sector(int n, int n_up) {
  if (n < 1 || n > kMaxSites) throw InvalidSize("site count " + std::to_string(n) + " outside 1..12");
  if (n_up < 0 || n_up > n) throw InvalidSize("up-spin count outside 0..n");
  return std::shared_ptr<const SpinBasis>(new SpinBasis(n, n_up));
}

std::shared_ptr<const SpinBasis> SpinBasis::full(int n) {
  if (n < 1 || n > kMaxSites) throw InvalidSize("site count " + std::to_string(n) + " outside 1..12");
  return std::shared_ptr<const SpinBasis>(new SpinBasis(n, std::nullopt));
}

std::optional<std::size_t> SpinBasis::index_of(Config c) const {
  if (c >= index_.size() || index_[c] < 0) return std::nullopt;
  return static_cast<std::size_t>(index_[c]);
}

BasisPtr sector_basis(int n) {
  if (n % 2 != 0 || n < 2 || n > kMaxSites)
    throw InvalidSize("sector basis needs even n in 2..12, got " + std::to_string(n));
  return SpinBasis::sector(n, n / 2);
}

std::string config_to_bits(Config c, int n) {
  std::string s(static_cast<std::size_t>(n), 'd');
  for (int site = 1; site <= n; ++site)
    if (is_up(c, site)) s[static_cast<std::size_t>(site - 1)] = 'u';
  return s;
}

Config bits_to_config(std::string_view bits) {
  if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxSites))
    throw ParseError("configuration string must have 1..12 characters");
  Config c = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    switch (bits[k]) {
      case 'u':
      case 'U':
      case '1':
        c |= Config{1} << k;
        break;
      case 'd':
      case 'D':
      case '0':
        break;
      default:
        throw ParseError("invalid spin character '" + std::string(1, bits[k]) + "' in \"" + std::string(bits) +
                         "\"");
    }
  }
  return c;
}

PureState::PureState(BasisPtr basis, CVector amp, Normalization mode)
    : basis_(std::move(basis)), amp_(std::move(amp)), normalized_(false) {
  if (!basis_) throw InvalidState("state without basis");
  if (amp_.size() != basis_->size())
    throw InvalidState("amplitude count " + std::to_string(amp_.size()) + " does not match basis size " +
                       std::to_string(basis_->size()));
  const double n2 = weight_norm2(amp_);
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw InvalidState("state has no nonzero amplitude");
  if (mode == Normalization::Normalize) {
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amp_) a *= inv;
    normalized_ = true;
  } else {
    normalized_ = std::abs(n2 - 1.0) <= 1e-12;
  }
}

cplx PureState::amplitude(Config c) const {
  const auto k = basis_->index_of(c);
  return k ? amp_[*k] : cplx{};
}

PureState PureState::normalized_copy() const { return PureState(basis_, amp_, Normalization::Normalize); }

PureState PureState::conj() const {
  CVector a = amp_;
  for (auto& x : a) x = std::conj(x);
  return PureState(basis_, std::move(a), normalized_ ? Normalization::Normalize : Normalization::Keep);
}

PureState PureState::gauge_fixed() const {
  const double peak = std::abs(*std::max_element(amp_.begin(), amp_.end(), [](cplx a, cplx b) {
    return std::abs(a) < std::abs(b);
  }));
  cplx phase = 1.0;
  for (const auto& a : amp_) {
    if (std::abs(a) > 1e-12 * peak) {
      phase = std::conj(a) / std::abs(a);
      break;
    }
  }
  CVector a = amp_;
  for (auto& x : a) x *= phase;
  return PureState(basis_, std::move(a), normalized_ ? Normalization::Normalize : Normalization::Keep);
}

double szsz(const PureState& psi, int i, int j) {
  check_pair(psi, i, j);
  const auto& b = *psi.basis();
  double s = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k)
    s += std::norm(psi.amplitudes()[k]) * sz_value(b.config(k), i) * sz_value(b.config(k), j);
  return s / weight_norm2(psi.amplitudes());
}

double sz(const PureState& psi, int i) {
  check_site(psi, i);
  const auto& b = *psi.basis();
  double s = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) s += std::norm(psi.amplitudes()[k]) * sz_value(b.config(k), i);
  return s / weight_norm2(psi.amplitudes());
}

cplx spsm(const PureState& psi, int i, int j) {
  check_pair(psi, i, j);
  // S+_i S-_j |k> = |k'> when k has i down and j up; k' swaps the two spins.
  const auto& b = *psi.basis();
  const Config mi = Config{1} << (i - 1), mj = Config{1} << (j - 1);
  cplx s = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const Config c = b.config(k);
    if ((c & mi) || !(c & mj)) continue;
    const auto kp = b.index_of(c ^ mi ^ mj);
    if (kp) s += std::conj(psi.amplitudes()[*kp]) * psi.amplitudes()[k];
  }
  return s / weight_norm2(psi.amplitudes());
}

double sdots(const PureState& psi, int i, int j) { return szsz(psi, i, j) + spsm(psi, i, j).real(); }

CMatrix reduced_density_matrix(const PureState& psi, std::span<const int> sites) {
  const int n = psi.sites();
  Config keep_mask = 0;
  for (int s : sites) {
    if (s < 1 || s > n) throw InvalidPair("site " + std::to_string(s) + " outside 1.." + std::to_string(n));
    const Config bit = Config{1} << (s - 1);
    if (keep_mask & bit) throw InvalidPair("repeated site " + std::to_string(s));
    keep_mask |= bit;
  }
  const std::size_t k = sites.size();
  const std::size_t dim = std::size_t{1} << k;
  const auto& b = *psi.basis();
  const double n2 = weight_norm2(psi.amplitudes());

  auto local_index = [&](Config c) {
    std::size_t idx = 0;
    for (std::size_t pos = 0; pos < k; ++pos)
      if (!is_up(c, sites[pos])) idx |= std::size_t{1} << (k - 1 - pos);
    return idx;
  };

  // Group amplitudes by the configuration of the traced-out sites.
  std::map<Config, std::vector<std::pair<std::size_t, cplx>>> groups;
  for (std::size_t q = 0; q < b.size(); ++q) {
    const cplx a = psi.amplitudes()[q];
    if (a == cplx{}) continue;
    groups[b.config(q) & ~keep_mask].emplace_back(local_index(b.config(q)), a);
  }
  CMatrix rho(dim, dim);
  for (const auto& [rest, members] : groups)
    for (const auto& [ra, aa] : members)
      for (const auto& [rb, ab] : members) rho(ra, rb) += aa * std::conj(ab);
  rho *= 1.0 / n2;
  return rho;
}

TwoQubitRDM rdm2(const PureState& psi, int i, int j) {
  check_pair(psi, i, j);
  const int s[2] = {i, j};
  return {reduced_density_matrix(psi, s), i, j};
}

CMatrix rdm1(const PureState& psi, int i) {
  check_site(psi, i);
  const double z = sz(psi, i);
  // <S+_i> and <S-_i> connect configurations differing at site i only.
  const auto& b = *psi.basis();
  const Config mi = Config{1} << (i - 1);
  cplx splus = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const Config c = b.config(k);
    if (c & mi) continue;
    const auto kp = b.index_of(c | mi);
    if (kp) splus += std::conj(psi.amplitudes()[*kp]) * psi.amplitudes()[k];
  }
  splus /= weight_norm2(psi.amplitudes());
  CMatrix rho(2, 2);
  rho(0, 0) = 0.5 + z;
  rho(1, 1) = 0.5 - z;
  rho(0, 1) = std::conj(splus);  // <S->
  rho(1, 0) = splus;             // <S+>
  return rho;
}

CMatrix to_down_up_order(const CMatrix& r) {
  CMatrix out(2, 2);
  out(0, 0) = r(1, 1);
  out(0, 1) = r(1, 0);
  out(1, 0) = r(0, 1);
  out(1, 1) = r(0, 0);
  return out;
}

PureState to_full_basis(const PureState& psi) {
  auto full = SpinBasis::full(psi.sites());
  CVector a(full->size());
  const auto& b = *psi.basis();
  for (std::size_t k = 0; k < b.size(); ++k) a[*full->index_of(b.config(k))] = psi.amplitudes()[k];
  return PureState(full, std::move(a), psi.normalized() ? Normalization::Normalize : Normalization::Keep);
}

namespace {

SectorVector apply_total_ladder(const SectorVector& v, bool raise) {
  const auto& b = *v.basis;
  const int n = b.sites();
  BasisPtr target = shifted_basis(b, raise ? +1 : -1);
  if (!target) {
    // Already fully polarized: the ladder operator annihilates everything.
    return {SpinBasis::sector(n, *b.up_count()), CVector(b.size())};
  }
  CVector out(target->size());
  for (std::size_t k = 0; k < b.size(); ++k) {
    const cplx a = v.amp[k];
    if (a == cplx{}) continue;
    const Config c = b.config(k);
    for (int site = 1; site <= n; ++site) {
      if (is_up(c, site) == raise) continue;
      const auto t = target->index_of(c ^ (Config{1} << (site - 1)));
      if (t) out[*t] += a;
    }
  }
  return {std::move(target), std::move(out)};
}

}  // namespace

SectorVector apply_sp_total(const SectorVector& v) { return apply_total_ladder(v, true); }
SectorVector apply_sm_total(const SectorVector& v) { return apply_total_ladder(v, false); }

SectorVector apply_exchange(const SectorVector& v, std::span<const Coupling> couplings) {
  const auto& b = *v.basis;
  CVector out(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) {
    const cplx a = v.amp[k];
    if (a == cplx{}) continue;
    const Config c = b.config(k);
    for (const auto& cp : couplings) {
      const bool ui = is_up(c, cp.i), uj = is_up(c, cp.j);
      out[k] += cp.strength * (ui == uj ? 0.25 : -0.25) * a;
      if (ui != uj) {
        const auto t = b.index_of(c ^ (Config{1} << (cp.i - 1)) ^ (Config{1} << (cp.j - 1)));
        if (t) out[*t] += 0.5 * cp.strength * a;
      }
    }
  }
  return {v.basis, std::move(out)};
}

CMatrix exchange_matrix(const SpinBasis& b, std::span<const Coupling> couplings) {
  for (const auto& cp : couplings)
    if (cp.i < 1 || cp.j < 1 || cp.i > b.sites() || cp.j > b.sites() || cp.i == cp.j)
      throw InvalidPair("invalid coupling (" + std::to_string(cp.i) + "," + std::to_string(cp.j) + ")");
  CMatrix h(b.size(), b.size());
  for (std::size_t k = 0; k < b.size(); ++k) {
    const Config c = b.config(k);
    for (const auto& cp : couplings) {
      const bool ui = is_up(c, cp.i), uj = is_up(c, cp.j);
      h(k, k) += cp.strength * (ui == uj ? 0.25 : -0.25);
      if (ui != uj) {
        const auto t = b.index_of(c ^ (Config{1} << (cp.i - 1)) ^ (Config{1} << (cp.j - 1)));
        if (t) h(*t, k) += 0.5 * cp.strength;
      }
    }
  }
  return h;
}

std::vector<Coupling> all_pairs(int n, double strength) {
  std::vector<Coupling> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.push_back({i, j, strength});
  return out;
}

SectorVector apply_s2_total(const SectorVector& v) {
  // S^2 = 3n/4 + 2 sum_{i<j} S_i . S_j
  const int n = v.basis->sites();
  const auto pairs = all_pairs(n, 2.0);
  SectorVector w = apply_exchange(v, pairs);
  for (std::size_t k = 0; k < w.amp.size(); ++k) w.amp[k] += 0.75 * n * v.amp[k];
  return w;
}

TotalSpin s2_total(const PureState& psi) {
  const PureState p = psi.normalized_copy();
  const int n = p.sites();
  double mean = 0.75 * n;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) mean += 2.0 * sdots(p, i, j);
  const SectorVector s2 = apply_s2_total(p.as_vector());
  const double second = weight_norm2(s2.amp);  // <S^4> since S^2 is Hermitian
  return {mean, std::max(0.0, second - mean * mean)};
}

AmplitudeProfile amplitude_profile(const PureState& psi) {
  const auto& a = psi.amplitudes();
  double lo = INFINITY, hi = 0.0, sum = 0.0;
  for (const auto& x : a) {
    const double m = std::abs(x);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
    sum += m;
  }
  const double mean = sum / static_cast<double>(a.size());
  const bool full_support = lo > 1e-12 * hi;
  return {mean > 0 ? (hi - lo) / mean : INFINITY, full_support};
}

std::pair<double, double> isotropy_residuals(const PureState& psi) {
  const PureState p = psi.normalized_copy();
  return {apply_sp_total(p).norm(), apply_sm_total(p).norm()};
}

}  // namespace vbent
