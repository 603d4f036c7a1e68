#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vbent/entanglement.hpp"
#include "vbent/errors.hpp"
#include "vbent/homogenizer.hpp"
#include "vbent/models.hpp"
#include "vbent/named_states.hpp"
#include "vbent/vb_basis.hpp"

using namespace vbent;

TEST(Models, ParseAndValidate) {
  EXPECT_EQ(parse_model("iirhm"), Model::Iirhm);
  EXPECT_EQ(parse_model("ring"), Model::HeisenbergRing);
  EXPECT_EQ(parse_model("chain"), Model::HeisenbergChain);
  EXPECT_THROW(parse_model("xxz"), ParseError);
  EXPECT_EQ(model_name(Model::HeisenbergRing), "ring");
  EXPECT_THROW(validate({5, Model::Iirhm, 1.0}), InvalidSize);
  EXPECT_THROW(validate({14, Model::Iirhm, 1.0}), InvalidSize);
  EXPECT_THROW(validate({4, Model::Iirhm, 0.0}), DomainError);
  EXPECT_THROW(validate({4, Model::Iirhm, NAN}), DomainError);
  EXPECT_NEAR((HamiltonianSpec{6, Model::Iirhm, 1.0}).coupling(), 0.2, 1e-16);
  EXPECT_EQ((HamiltonianSpec{6, Model::Iirhm, 1.0}).couplings().size(), 15u);
  EXPECT_EQ((HamiltonianSpec{6, Model::HeisenbergRing, 1.0}).couplings().size(), 6u);
  EXPECT_EQ((HamiltonianSpec{6, Model::HeisenbergChain, 1.0}).couplings().size(), 5u);
}

TEST(Models, Multiplicities) {
  EXPECT_EQ(sector_multiplicity(4, 0), 2u);
  EXPECT_EQ(sector_multiplicity(4, 1), 3u);
  EXPECT_EQ(sector_multiplicity(4, 2), 1u);
  EXPECT_EQ(sector_multiplicity(8, 0), 14u);
  EXPECT_EQ(sector_multiplicity(8, 1), 28u);
  EXPECT_NEAR(iirhm_energy(4, 3.0, 0), -1.5, 1e-15);
  EXPECT_NEAR(iirhm_energy(4, 3.0, 2), 1.5, 1e-15);
}

TEST(Models, InfiniteRangeSpectrum) {
  for (int n : {4, 6, 8, 10}) {
    for (double js : {1.0, -2.0, 3.0}) {
      const SpectrumReport r = spectrum({n, Model::Iirhm, js});
      EXPECT_TRUE(r.analytic_ok);
      EXPECT_LE(r.analytic_deviation, 1e-10);
      ASSERT_EQ(r.levels.size(), static_cast<std::size_t>(n / 2 + 1));
      std::size_t total = 0;
      for (const auto& l : r.levels) {
        const double e = 0.5 * js / (n - 1) * (l.s_total * (l.s_total + 1) - 0.75 * n);
        EXPECT_NEAR(l.energy, e, 1e-10);
        EXPECT_EQ(l.multiplicity, binomial(n, n / 2 - l.s_total) - binomial(n, n / 2 - l.s_total - 1));
        total += l.multiplicity;
      }
      EXPECT_EQ(total, binomial(n, n / 2));
      if (js > 0) {
        EXPECT_EQ(r.ground_degeneracy, singlet_count(n));
      }
    }
  }
}

TEST(Models, JStarScalingExample) {
  const SpectrumReport r = spectrum({4, Model::Iirhm, 3.0});
  ASSERT_EQ(r.levels.size(), 3u);
  EXPECT_NEAR(r.levels[0].energy, -1.5, 1e-12);
  EXPECT_NEAR(r.levels[1].energy, -0.5, 1e-12);
  EXPECT_NEAR(r.levels[2].energy, 1.5, 1e-12);
}

TEST(Models, NearestNeighbourGroundEnergies) {
  EXPECT_NEAR(spectrum({4, Model::HeisenbergRing, 1.0}).ground_energy, -2.0, 1e-12);
  EXPECT_EQ(spectrum({4, Model::HeisenbergRing, 1.0}).ground_degeneracy, 1u);
  // six-site ring and four-site open chain, textbook values
  EXPECT_NEAR(spectrum({6, Model::HeisenbergRing, 1.0}).ground_energy, -2.8027756377319946, 1e-10);
  EXPECT_NEAR(spectrum({4, Model::HeisenbergChain, 1.0}).ground_energy, -(3.0 + 2.0 * std::sqrt(3.0)) / 4.0, 1e-12);
}

TEST(Models, GroundStates) {
  for (int n : {4, 6, 8}) {
    const HamiltonianSpec spec{n, Model::Iirhm, 1.0};
    for (const auto& m : enumerate_all_matchings(n)) EXPECT_TRUE(is_ground_state(spec, vb_state(m)).is_ground);
    CVector flat(sector_basis(n)->size(), 1.0);
    const auto chk = is_ground_state(spec, PureState(sector_basis(n), flat));
    EXPECT_FALSE(chk.is_ground);
    EXPECT_NEAR(chk.energy, iirhm_energy(n, 1.0, n / 2), 1e-10);
  }
  for (const auto& f : named_families()) {
    const HamiltonianSpec spec{named_family_sites(f), Model::Iirhm, 1.0};
    EXPECT_TRUE(is_ground_state(spec, named_state(f)).is_ground) << f;
  }
  for (const auto& psi : homogenize_isotropic(6)) EXPECT_TRUE(is_ground_state({6, Model::Iirhm, 2.0}, psi).is_ground);
  EXPECT_THROW(is_ground_state({4, Model::HeisenbergRing, 1.0}, named_state("hs")), Unsupported);
}

TEST(Models, FourSiteIdentity) {
  EXPECT_TRUE(four_site_identity_check());
  const PureState psi = vb_state(Matching(4, {{1, 2}, {3, 4}}));
  const Coupling only[] = {{1, 3, 1.0}};
  EXPECT_GT(exchange_residual(psi, only), 0.1);
}

TEST(Models, RingBaseline) {
  const RingBaseline b = ring_baseline(4);
  EXPECT_NEAR(b.ground_energy, -2.0, 1e-12);
  EXPECT_NEAR(b.szsz_nn, -1.0 / 6.0, 1e-10);
  EXPECT_NEAR(b.szsz_nnn, 1.0 / 12.0, 1e-10);
  EXPECT_NEAR(b.nn_entropy, entropy_closed_form(-1.0 / 6.0), 1e-10);
  EXPECT_NEAR(b.nn_entropy, 1.2075, 5e-3);
  EXPECT_NEAR(b.nnn_entropy, std::log2(3.0), 1e-10);
  EXPECT_NEAR(b.e2v_all_pairs, e2v(b.ground_state), 1e-12);
  EXPECT_LT(b.commutator_sz, 1e-12);
  EXPECT_LT(b.commutator_s2, 1e-12);
  EXPECT_EQ(b.pair_entropies.size(), 6u);
  EXPECT_LT(b.e2v_all_pairs, e2v_max(4));
  EXPECT_THROW(ring_baseline(4, Model::Iirhm), Unsupported);
}
