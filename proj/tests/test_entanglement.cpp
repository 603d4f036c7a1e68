#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vbent/entanglement.hpp"
#include "vbent/errors.hpp"
#include "vbent/vb_basis.hpp"

using namespace vbent;

namespace {

double spectrum_entropy(std::initializer_list<double> lams) {
  double s = 0.0;
  for (double l : lams)
    if (l > 0) s -= l * std::log2(l);
  return s;
}

double isotropic_entropy(double c) { return spectrum_entropy({0.25 + c, 0.25 + c, 0.25 + c, 0.25 - 3 * c}); }

CMatrix pure_rho(const CVector& v) {
  CMatrix r(v.size(), v.size());
  const double w = std::pow(norm(v), 2);
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = 0; b < v.size(); ++b) r(a, b) = v[a] * std::conj(v[b]) / w;
  return r;
}

}  // namespace

TEST(Entanglement, VonNeumannBasics) {
  EXPECT_NEAR(von_neumann_entropy(CMatrix::identity(4) * 0.25), 2.0, 1e-14);
  EXPECT_NEAR(von_neumann_entropy(pure_rho({1.0, 0.0, 0.0, 1.0})), 0.0, 1e-12);
  CMatrix bad = CMatrix::identity(2);
  EXPECT_THROW(von_neumann_entropy(bad), InvalidDensityMatrix);  // trace 2
  CMatrix neg(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(von_neumann_entropy(neg), InvalidDensityMatrix);
  CMatrix tiny(2, 2);
  tiny(0, 0) = 1.0 + 5e-11;
  tiny(1, 1) = -5e-11;
  EXPECT_NEAR(von_neumann_entropy(tiny), 0.0, 1e-9);
}

TEST(Entanglement, ClosedFormMatchesWernerSpectrum) {
  for (double p = -1.0 / 3.0; p <= 1.0; p += 1.0 / 48.0) {
    const double c = -p / 4.0;
    const double numeric = von_neumann_entropy(werner_matrix(p));
    EXPECT_NEAR(entropy_closed_form(c), numeric, 1e-12) << p;
    EXPECT_NEAR(entropy_closed_form(c), isotropic_entropy(c), 1e-12);
    EXPECT_NEAR(purity(werner_matrix(p)), 0.25 + 12 * c * c, 1e-13);
    EXPECT_NEAR(iconcurrence_closed_form(c), std::sqrt(2 * (1 - purity(werner_matrix(p)))), 1e-12);
  }
  EXPECT_NEAR(entropy_closed_form(0.0), 2.0, 1e-15);
  EXPECT_NEAR(entropy_closed_form(-0.25), 0.0, 1e-12);
  EXPECT_NEAR(entropy_closed_form(1.0 / 12.0), std::log2(3.0), 1e-12);
  EXPECT_THROW(entropy_closed_form(-0.26), DomainError);
  EXPECT_THROW(entropy_closed_form(0.09), DomainError);
  EXPECT_THROW(iconcurrence_closed_form(0.1), DomainError);
}

TEST(Entanglement, DerivativeMatchesFiniteDifference) {
  for (double c : {-0.2, -0.1, -0.05, -1.0 / 28.0, 0.0, 0.05}) {
    const double h = 1e-6;
    const double fd = (entropy_closed_form(c + h) - entropy_closed_form(c - h)) / (2 * h);
    EXPECT_NEAR(entropy_closed_form_derivative(c), fd, 1e-7) << c;
  }
}

TEST(Entanglement, MaximalValues) {
  EXPECT_NEAR(e2v_max(4), 1.0 + 0.5 * std::log2(3.0), 1e-14);
  EXPECT_NEAR(e2v_max(4), 1.792481250360578, 1e-14);
  EXPECT_NEAR(e2v_max(6), 1.9219280948873623, 1e-14);
  EXPECT_NEAR(e2v_max(8), 1.9591904234199458, 1e-14);
  for (int n : {4, 6, 8, 10, 50}) {
    const double c = -1.0 / (4.0 * (n - 1));
    EXPECT_NEAR(e2v_max(n), isotropic_entropy(c), 1e-13);
    EXPECT_NEAR(ic_max(n), std::sqrt(1.5 - 24 * c * c), 1e-14);
  }
  EXPECT_THROW(e2v_max(3), InvalidSize);
  EXPECT_THROW(e2v_max(2), InvalidSize);
}

TEST(Entanglement, ValenceBondProductAverages) {
  const Matching m(4, {{1, 2}, {3, 4}});
  const PureState psi = vb_state(m);
  // bonded pairs are pure singlets, every other pair is maximally mixed
  EXPECT_NEAR(e2v(psi), (4 * 2.0) / 6.0, 1e-12);
  const double ic_cross = std::sqrt(2 * (1 - 0.25));
  EXPECT_NEAR(iconcurrence(psi), (4 * ic_cross) / 6.0, 1e-12);
}

TEST(Entanglement, WoottersConcurrence) {
  EXPECT_NEAR(wootters_concurrence(pure_rho({0.0, 1.0, -1.0, 0.0})), 1.0, 1e-12);
  EXPECT_NEAR(wootters_concurrence(pure_rho({0.0, 1.0, 0.0, 0.0})), 0.0, 1e-12);
  for (double p = 0.0; p <= 1.0; p += 0.05)
    EXPECT_NEAR(wootters_concurrence(werner_matrix(p)), std::max(0.0, (3 * p - 1) / 2), 1e-10) << p;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    CVector v(4);
    for (auto& x : v) x = {g(rng), g(rng)};
    const double nv = norm(v);
    for (auto& x : v) x /= nv;
    EXPECT_NEAR(wootters_concurrence(pure_rho(v)), 2 * std::abs(v[0] * v[3] - v[1] * v[2]), 1e-9);
  }
}

TEST(Entanglement, WernerForm) {
  const CMatrix w = werner_matrix(1.0);
  EXPECT_NEAR(w(1, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(w(1, 2).real(), -0.5, 1e-15);
  EXPECT_NEAR(w(0, 0).real(), 0.0, 1e-15);
  const PureState vb = vb_state(Matching(4, {{1, 2}, {3, 4}}));
  EXPECT_NEAR(werner_p(vb, 1, 2), 1.0, 1e-12);
  EXPECT_NEAR(werner_p(vb, 1, 3), 0.0, 1e-12);
  const auto basis = sector_basis(4);
  CVector a(basis->size());
  a[*basis->index_of(bits_to_config("uudd"))] = 1.0;
  EXPECT_THROW(werner_p(PureState(basis, a), 1, 2), NotRotationallyInvariant);
}

TEST(Entanglement, Bounds) {
  for (int n : {4, 6, 8, 20}) {
    const BoundComparison b = bound_comparison(n);
    EXPECT_NEAR(b.p_exact, 1.0 / (n - 1), 1e-15);
    EXPECT_NEAR(b.p_monogamy, 1.0 / 3 + 2.0 / (3 * std::sqrt(n - 1.0)), 1e-15);
    EXPECT_NEAR(b.p_telecloning, 1.0 / 3 + 2.0 / (3 * (n - 1.0)), 1e-15);
    EXPECT_TRUE(b.ordered);
    EXPECT_NEAR(rvb_gas_p(n), 1.0 / 3 + 2.0 / (3.0 * n), 1e-15);
  }
  EXPECT_THROW(bound_comparison(2), InvalidSize);
}

TEST(Entanglement, MeasureReport) {
  const PureState vb = vb_state(Matching(6, {{1, 2}, {3, 6}, {4, 5}}));
  const EntanglementReport all = measure(vb);
  EXPECT_EQ(all.pairs.size(), 15u);
  EXPECT_FALSE(all.homogeneous);
  EXPECT_TRUE(all.isotropic);
  EXPECT_NEAR(all.e2v, e2v(vb), 1e-12);
  const std::vector<std::pair<int, int>> some = {{3, 6}};
  const EntanglementReport one = measure(vb, some);
  ASSERT_EQ(one.pairs.size(), 1u);
  EXPECT_NEAR(one.pairs[0].entropy, 0.0, 1e-10);
  EXPECT_NEAR(one.pairs[0].sdots, -0.75, 1e-12);
  ASSERT_TRUE(one.pairs[0].werner_p.has_value());
  EXPECT_NEAR(*one.pairs[0].werner_p, 1.0, 1e-12);
  EXPECT_NEAR(one.pairs[0].wootters, 1.0, 1e-10);
  const std::vector<std::pair<int, int>> bad = {{2, 2}};
  EXPECT_THROW(measure(vb, bad), InvalidPair);
}

TEST(Entanglement, HomogeneityIsOptimal) {
  for (int n : {4, 6, 8})
    for (Objective o : {Objective::Entropy, Objective::IConcurrence}) {
      const auto a = verify_homogeneity_optimal(n, 2000, 99, o);
      const auto b = verify_homogeneity_optimal(n, 2000, 99, o);
      EXPECT_TRUE(a.passed) << n;
      EXPECT_EQ(a.samples, 2000u);
      EXPECT_LE(a.max_excess, 1e-9);
      EXPECT_EQ(a.best_sampled, b.best_sampled);
    }
  // a concrete non-uniform assignment for n = 4: c = (-0.2, -0.05, 0)
  const double uniform = 3 * entropy_closed_form(-1.0 / 12.0);
  const double other = entropy_closed_form(-0.2) + entropy_closed_form(-0.05) + entropy_closed_form(0.0);
  EXPECT_LT(other, uniform);
}

TEST(Entanglement, Curves) {
  const auto rows = e2v_max_curve(100);
  ASSERT_EQ(rows.size(), 49u);
  EXPECT_EQ(rows.front().n, 4);
  EXPECT_NEAR(rows.front().value, 1.792481, 1e-6);
  EXPECT_NEAR(rows.front().ratio, 0.896240, 1e-6);
  EXPECT_GT(rows.back().value, 1.99);
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_GT(rows[k].ratio, rows[k - 1].ratio);
  const auto ic = ic_max_curve(20);
  for (std::size_t k = 1; k < ic.size(); ++k) EXPECT_GT(ic[k].value, ic[k - 1].value);
  EXPECT_NEAR(ic.front().ratio, ic_max(4) / std::sqrt(1.5), 1e-15);
  EXPECT_THROW(e2v_max_curve(2), InvalidSize);
  EXPECT_THROW(e2v_max_curve(20000), InvalidSize);
}
