#include <gtest/gtest.h>

#include <random>
#include <set>

#include "vbent/errors.hpp"
#include "vbent/vb_basis.hpp"

using namespace vbent;

namespace {

std::size_t double_factorial(int n) {
  std::size_t r = 1;
  for (int k = n; k > 1; k -= 2) r *= static_cast<std::size_t>(k);
  return r;
}

// Singlet product via Kronecker products of (|ud> - |du>) in bond order,
// followed by relabelling kron positions to sites.
CVector vb_oracle(int n, const std::vector<std::pair<int, int>>& bonds) {
  CMatrix singlet(4, 1);  // index 2*first + second with 1 = up
  singlet(2, 0) = 1.0;    // first up, second down
  singlet(1, 0) = -1.0;
  CMatrix v = CMatrix::identity(1);
  for (std::size_t b = 0; b < bonds.size(); ++b) v = kron(v, singlet);
  std::vector<int> order;  // kron position -> site, most significant first
  for (const auto& [a, b] : bonds) {
    order.push_back(a);
    order.push_back(b);
  }
  const auto basis = sector_basis(n);
  CVector out(basis->size());
  for (std::size_t idx = 0; idx < v.rows(); ++idx) {
    if (v(idx, 0) == cplx{}) continue;
    Config c = 0;
    for (int p = 0; p < n; ++p)
      if ((idx >> (n - 1 - p)) & 1u) c |= Config{1} << (order[p] - 1);
    out[*basis->index_of(c)] += v(idx, 0);
  }
  return out;
}

}  // namespace

TEST(VbBasis, Counting) {
  EXPECT_EQ(catalan(2), 2u);
  EXPECT_EQ(catalan(3), 5u);
  EXPECT_EQ(catalan(4), 14u);
  EXPECT_EQ(binomial(8, 4), 70u);
  EXPECT_EQ(binomial(8, 3), 56u);
  EXPECT_EQ(singlet_count(8), 14u);
  EXPECT_EQ(singlet_count(10), 42u);
}

TEST(VbBasis, RumerCountsAreCatalan) {
  for (int n = 2; n <= 12; n += 2) EXPECT_EQ(enumerate_rumer(n).size(), catalan(n / 2)) << n;
  EXPECT_THROW(enumerate_rumer(5), InvalidSize);
  EXPECT_THROW(enumerate_rumer(0), InvalidSize);
}

TEST(VbBasis, AllMatchingsCount) {
  for (int n = 2; n <= 10; n += 2) EXPECT_EQ(enumerate_all_matchings(n).size(), double_factorial(n - 1)) << n;
}

TEST(VbBasis, RumerEqualsNonCrossingSubset) {
  for (int n : {4, 6, 8, 10}) {
    std::set<std::vector<std::pair<int, int>>> brute, rumer;
    for (const auto& m : enumerate_all_matchings(n)) {
      bool cross = false;
      for (const auto& [a, b] : m.pairs())
        for (const auto& [c, d] : m.pairs()) cross = cross || (a < c && c < b && b < d);
      if (!cross) brute.insert(m.pairs());
    }
    const auto ms = enumerate_rumer(n);
    for (std::size_t k = 0; k < ms.size(); ++k) {
      EXPECT_FALSE(ms[k].is_crossing());
      rumer.insert(ms[k].pairs());
      if (k > 0) {
        EXPECT_LT(ms[k - 1].pairs(), ms[k].pairs());
      }
    }
    EXPECT_EQ(rumer, brute) << n;
  }
}

TEST(VbBasis, SixSiteRumerList) {
  const auto ms = enumerate_rumer(6);
  const std::vector<std::vector<std::pair<int, int>>> expect = {
      {{1, 2}, {3, 4}, {5, 6}}, {{1, 2}, {3, 6}, {4, 5}}, {{1, 4}, {2, 3}, {5, 6}},
      {{1, 6}, {2, 3}, {4, 5}}, {{1, 6}, {2, 5}, {3, 4}}};
  ASSERT_EQ(ms.size(), expect.size());
  for (std::size_t k = 0; k < ms.size(); ++k) EXPECT_EQ(ms[k].pairs(), expect[k]);
}

TEST(VbBasis, ChordsCross) {
  EXPECT_TRUE(chords_cross({1, 3}, {2, 4}));
  EXPECT_TRUE(chords_cross({3, 1}, {4, 2}));
  EXPECT_FALSE(chords_cross({1, 2}, {3, 4}));
  EXPECT_FALSE(chords_cross({1, 4}, {2, 3}));
  EXPECT_FALSE(chords_cross({1, 6}, {2, 5}));
}

TEST(VbBasis, MatchingValidation) {
  const Matching m(4, {{3, 1}, {4, 2}});
  EXPECT_EQ(m.pairs(), (std::vector<std::pair<int, int>>{{1, 3}, {2, 4}}));
  EXPECT_TRUE(m.is_crossing());
  EXPECT_EQ(m.partner(4), 2);
  EXPECT_THROW(Matching(4, {{1, 2}, {2, 3}}), InvalidPair);
  EXPECT_THROW(Matching(4, {{1, 2}, {3, 5}}), InvalidPair);
  EXPECT_THROW(Matching(4, {{1, 2}}), InvalidPair);
  EXPECT_THROW(Matching(3, {{1, 2}}), InvalidSize);
}

TEST(VbBasis, AmplitudesMatchKroneckerOracle) {
  for (int n : {2, 4, 6, 8}) {
    for (const auto& m : enumerate_all_matchings(n)) {
      const CVector got = vb_amplitudes(m);
      const CVector ref = vb_oracle(n, m.pairs());
      for (std::size_t k = 0; k < got.size(); ++k) ASSERT_EQ(got[k], ref[k]) << n;
    }
  }
}

TEST(VbBasis, OrientationFlag) {
  const std::vector<Bond> reversed = {{2, 1}, {3, 4}};
  const CVector asc = vb_amplitudes(4, reversed, Orientation::Ascending);
  const CVector raw = vb_amplitudes(4, reversed, Orientation::AsWritten);
  const CVector ref = vb_oracle(4, {{2, 1}, {3, 4}});
  for (std::size_t k = 0; k < asc.size(); ++k) {
    EXPECT_EQ(asc[k], -raw[k]);
    EXPECT_EQ(raw[k], ref[k]);
  }
}

TEST(VbBasis, SingletProductsAreSinglets) {
  for (const auto& m : enumerate_all_matchings(6)) {
    const PureState psi = vb_state(m);
    const auto [p, q] = isotropy_residuals(psi);
    EXPECT_LT(p, 1e-14);
    EXPECT_LT(q, 1e-14);
    std::size_t nonzero = 0;
    for (const auto& a : vb_amplitudes(m)) nonzero += a != cplx{};
    EXPECT_EQ(nonzero, 8u);
    for (const auto& [i, j] : m.pairs()) EXPECT_NEAR(sdots(psi, i, j), -0.75, 1e-14);
  }
}

TEST(VbBasis, RumerMapRank) {
  for (int n : {2, 4, 6, 8, 10}) {
    const RumerMap map = rumer_map(n);
    EXPECT_EQ(map.rank, singlet_count(n));
    EXPECT_EQ(map.m.rows(), binomial(n, n / 2));
    EXPECT_EQ(map.m.cols(), catalan(n / 2));
  }
}

TEST(VbBasis, CrossingIdentity) {
  EXPECT_LE(crossing_identity_residual(), 1e-12);
  for (int n : {4, 6, 8}) {
    EXPECT_TRUE(crossing_identity_check(n));
    EXPECT_LE(crossing_span_residual(n), 1e-10);
  }
  // (13)(24) = (12)(34) + (14)(23) on the oracle side as well
  const CVector x = vb_oracle(4, {{1, 3}, {2, 4}});
  const CVector y = vb_oracle(4, {{1, 2}, {3, 4}});
  const CVector z = vb_oracle(4, {{1, 4}, {2, 3}});
  for (std::size_t k = 0; k < x.size(); ++k) EXPECT_EQ(x[k], y[k] + z[k]);
}

TEST(VbBasis, RumerCoefficientsRecoverCombination) {
  const RumerMap map = rumer_map(6);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  CVector c(map.m.cols());
  for (auto& x : c) x = {g(rng), g(rng)};
  const PureState psi(sector_basis(6), map.m * c, Normalization::Keep);
  const RumerExpansion e = rumer_coefficients(map, psi);
  EXPECT_LT(e.residual, 1e-12);
  for (std::size_t k = 0; k < c.size(); ++k) EXPECT_LT(std::abs(e.coefficients[k] - c[k]), 1e-12);

  CVector ferro(sector_basis(6)->size(), 1.0);
  EXPECT_GT(rumer_coefficients(map, PureState(sector_basis(6), ferro)).residual, 0.5);
}
