#include "vbent/vb_basis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <unordered_map>

#include "vbent/errors.hpp"

namespace vbent {

namespace {

void check_even(int n, int lo, int hi) {
  if (n % 2 != 0 || n < lo || n > hi)
    throw InvalidSize("need even n in " + std::to_string(lo) + ".." + std::to_string(hi) + ", got " +
                      std::to_string(n));
}

void check_cover(int n, std::span<const Bond> bonds) {
  if (static_cast<int>(bonds.size()) * 2 != n) throw InvalidPair("a perfect matching needs n/2 bonds");
  Config seen = 0;
  for (const auto& b : bonds) {
    for (int s : {b.first, b.second}) {
      if (s < 1 || s > n) throw InvalidPair("bond site " + std::to_string(s) + " outside 1.." + std::to_string(n));
      const Config bit = Config{1} << (s - 1);
      if (seen & bit) throw InvalidPair("site " + std::to_string(s) + " appears in two bonds");
      seen |= bit;
    }
  }
}

// Non-crossing matchings of the ordered site list [lo, hi].
void rumer_rec(const std::vector<int>& sites, std::size_t lo, std::size_t hi,
               std::vector<std::pair<int, int>>& acc, const std::function<void()>& emit);

}  // namespace

bool chords_cross(std::pair<int, int> p, std::pair<int, int> q) {
  auto [a, b] = p;
  auto [c, d] = q;
  if (a > b) std::swap(a, b);
  if (c > d) std::swap(c, d);
  const bool c_in = a < c && c < b;
  const bool d_in = a < d && d < b;
  return c_in != d_in && c != a && c != b && d != a && d != b;
}

Matching::Matching(int n, std::vector<std::pair<int, int>> pairs) : n_(n), pairs_(std::move(pairs)) {
  if (n % 2 != 0 || n < 2 || n > kMaxSites) throw InvalidSize("matching needs even n in 2..12");
  std::vector<Bond> bonds;
  for (auto& [i, j] : pairs_) {
    if (i > j) std::swap(i, j);
    bonds.push_back({i, j});
  }
  check_cover(n, bonds);
  std::sort(pairs_.begin(), pairs_.end());
}

bool Matching::is_crossing() const {
  for (std::size_t a = 0; a < pairs_.size(); ++a)
    for (std::size_t b = a + 1; b < pairs_.size(); ++b)
      if (chords_cross(pairs_[a], pairs_[b])) return true;
  return false;
}

int Matching::partner(int site) const {
  for (const auto& [i, j] : pairs_) {
    if (i == site) return j;
    if (j == site) return i;
  }
  throw InvalidPair("site " + std::to_string(site) + " not in matching");
}

namespace {

void rumer_rec(const std::vector<int>& sites, std::size_t lo, std::size_t hi,
               std::vector<std::pair<int, int>>& acc, const std::function<void()>& emit) {
  if (lo >= hi) {
    emit();
    return;
  }
  // Site lo pairs with an odd offset so both sides keep an even count.
  for (std::size_t k = lo + 1; k < hi; k += 2) {
    acc.emplace_back(sites[lo], sites[k]);
    rumer_rec(sites, lo + 1, k, acc, [&, k] { rumer_rec(sites, k + 1, hi, acc, emit); });
    acc.pop_back();
  }
}

}  // namespace

std::vector<Matching> enumerate_rumer(int n) {
  check_even(n, 2, kMaxSites);
  std::vector<int> sites(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) sites[static_cast<std::size_t>(s)] = s + 1;
  std::vector<Matching> out;
  std::vector<std::pair<int, int>> acc;
  rumer_rec(sites, 0, sites.size(), acc, [&] { out.emplace_back(n, acc); });
  std::sort(out.begin(), out.end(), [](const Matching& a, const Matching& b) { return a.pairs() < b.pairs(); });
  return out;
}

std::vector<Matching> enumerate_all_matchings(int n) {
  check_even(n, 2, 10);
  std::vector<Matching> out;
  std::vector<std::pair<int, int>> acc;
  std::function<void(Config)> rec = [&](Config used) {
    int first = 0;
    for (int s = 1; s <= n; ++s)
      if (!(used & (Config{1} << (s - 1)))) {
        first = s;
        break;
      }
    if (first == 0) {
      out.emplace_back(n, acc);
      return;
    }
    for (int t = first + 1; t <= n; ++t) {
      const Config bt = Config{1} << (t - 1);
      if (used & bt) continue;
      acc.emplace_back(first, t);
      rec(used | bt | (Config{1} << (first - 1)));
      acc.pop_back();
    }
  };
  rec(0);
  return out;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::size_t catalan(int k) { return binomial(2 * k, k) / static_cast<std::size_t>(k + 1); }

std::size_t singlet_count(int n) { return binomial(n, n / 2) - binomial(n, n / 2 - 1); }

CVector vb_amplitudes(int n, std::span<const Bond> bonds, Orientation orientation) {
  check_cover(n, bonds);
  auto basis = sector_basis(n);
  std::unordered_map<Config, double> terms{{0, 1.0}};
  for (Bond b : bonds) {
    if (orientation == Orientation::Ascending && b.first > b.second) std::swap(b.first, b.second);
    std::unordered_map<Config, double> next;
    for (const auto& [c, v] : terms) {
      next[c | (Config{1} << (b.first - 1))] += v;
      next[c | (Config{1} << (b.second - 1))] -= v;
    }
    terms = std::move(next);
  }
  CVector amp(basis->size());
  for (const auto& [c, v] : terms) amp[*basis->index_of(c)] += v;
  return amp;
}

CVector vb_amplitudes(const Matching& m) {
  std::vector<Bond> bonds;
  for (const auto& [i, j] : m.pairs()) bonds.push_back({i, j});
  return vb_amplitudes(m.sites(), bonds, Orientation::Ascending);
}

PureState vb_state(const Matching& m, Normalization mode) {
  return PureState(sector_basis(m.sites()), vb_amplitudes(m), mode);
}

PureState vb_state(int n, std::span<const Bond> bonds, Orientation orientation, Normalization mode) {
  return PureState(sector_basis(n), vb_amplitudes(n, bonds, orientation), mode);
}

RumerMap rumer_map(int n) {
  check_even(n, 2, 10);
  RumerMap map;
  map.n = n;
  map.matchings = enumerate_rumer(n);
  std::vector<CVector> cols;
  for (const auto& m : map.matchings) cols.push_back(vb_amplitudes(m));
  map.m = CMatrix::from_columns(cols);
  map.rank = matrix_rank(map.m);
  if (map.rank != singlet_count(n))
    throw Error("Rumer map rank " + std::to_string(map.rank) + " differs from " + std::to_string(singlet_count(n)));
  return map;
}

double crossing_identity_residual() {
  const Bond crossed[] = {{1, 3}, {2, 4}};
  const Bond a[] = {{1, 2}, {3, 4}};
  const Bond b[] = {{1, 4}, {2, 3}};
  const CVector x = vb_amplitudes(4, crossed);
  const CVector y = vb_amplitudes(4, a);
  const CVector z = vb_amplitudes(4, b);
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(x[k] - y[k] - z[k]));
  return worst;
}

double crossing_span_residual(int n) {
  const RumerMap map = rumer_map(n);
  OrthonormalSet span(map.m.rows());
  for (std::size_t c = 0; c < map.m.cols(); ++c) span.try_add(map.m.column(c));
  double worst = 0.0;
  for (const auto& m : enumerate_all_matchings(n)) {
    if (!m.is_crossing()) continue;
    const CVector v = vb_amplitudes(m);
    worst = std::max(worst, norm(span.residual(v)) / norm(v));
  }
  return worst;
}

bool crossing_identity_check(int n) {
  check_even(n, 2, 10);
  if (n == 2) return true;
  if (n == 4) return crossing_identity_residual() <= 1e-12 && crossing_span_residual(4) <= 1e-10;
  return crossing_span_residual(n) <= 1e-10;
}

RumerExpansion rumer_coefficients(const RumerMap& map, const PureState& psi) {
  if (psi.sites() != map.n || !psi.basis()->is_sz0())
    throw InvalidState("state does not live in the Sz=0 sector of the map");
  RumerExpansion out;
  out.coefficients = least_squares(map.m, psi.amplitudes());
  const CVector fit = map.m * out.coefficients;
  double r = 0.0;
  for (std::size_t k = 0; k < fit.size(); ++k) r += std::norm(fit[k] - psi.amplitudes()[k]);
  out.residual = std::sqrt(r);
  return out;
}

}  // namespace vbent
