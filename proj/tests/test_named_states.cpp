#include <gtest/gtest.h>

#include <numbers>

#include "vbent/entanglement.hpp"
#include "vbent/errors.hpp"
#include "vbent/homogenizer.hpp"
#include "vbent/named_states.hpp"

using namespace vbent;

namespace {

cplx amp(const PureState& psi, const char* bits) { return psi.amplitude(bits_to_config(bits)); }

}  // namespace

TEST(NamedStates, Catalogue) {
  EXPECT_EQ(named_families().size(), 7u);
  EXPECT_TRUE(is_named_family("six-c-conj"));
  EXPECT_FALSE(is_named_family("six-d"));
  EXPECT_EQ(named_family_sites("hs"), 4);
  EXPECT_EQ(named_family_sites("six-b"), 6);
  EXPECT_THROW(named_state("ghz"), InvalidState);
  EXPECT_THROW(named_family_sites("ghz"), InvalidState);
}

TEST(NamedStates, HsCoefficients) {
  const PureState hs = named_state("hs", Normalization::Keep);
  const cplx w = std::polar(1.0, 2 * std::numbers::pi / 3);
  EXPECT_LT(std::abs(amp(hs, "udud") - 1.0), 1e-15);
  EXPECT_LT(std::abs(amp(hs, "dudu") - 1.0), 1e-15);
  EXPECT_LT(std::abs(amp(hs, "uddu") - w), 1e-15);
  EXPECT_LT(std::abs(amp(hs, "duud") - w), 1e-15);
  EXPECT_LT(std::abs(amp(hs, "uudd") - w * w), 1e-15);
  EXPECT_LT(std::abs(amp(hs, "dduu") - w * w), 1e-15);
  const PureState c = named_state("hs-conj", Normalization::Keep);
  EXPECT_LT(std::abs(amp(c, "uddu") - std::conj(w)), 1e-15);
}

TEST(NamedStates, SixBSigns) {
  const PureState b = named_state("six-b", Normalization::Keep);
  std::size_t plus = 0, minus = 0;
  for (const auto& a : b.amplitudes()) {
    EXPECT_NEAR(a.imag(), 0.0, 0.0);
    EXPECT_NEAR(std::abs(a.real()), 1.0, 0.0);
    (a.real() > 0 ? plus : minus)++;
  }
  EXPECT_EQ(plus, 10u);
  EXPECT_EQ(minus, 10u);
  EXPECT_EQ(amp(b, "ududud"), cplx(1.0));
  EXPECT_EQ(amp(b, "dududu"), cplx(-1.0));
}

TEST(NamedStates, ExpansionsMatchSingletProducts) {
  for (const auto& f : named_families()) {
    const PureState a = named_state(f);
    const PureState b = named_state_from_bonds(f);
    EXPECT_NEAR(std::abs(inner(a.amplitudes(), b.normalized_copy().amplitudes())), 1.0, 1e-12) << f;
    // equal magnitudes on the unnormalized singlet form as well
    const auto& amps = b.amplitudes();
    for (const auto& x : amps) EXPECT_NEAR(std::abs(x), std::abs(amps[0]), 1e-12) << f;
  }
}

TEST(NamedStates, AllCertified) {
  for (const auto& f : named_families()) {
    const PureState psi = named_state(f);
    const auto cert = verify_maximal(psi);
    EXPECT_TRUE(cert.valid()) << f;
    EXPECT_NEAR(e2v(psi), e2v_max(psi.sites()), 1e-12);
    EXPECT_TRUE(amplitude_profile(psi).full_support);
  }
}

TEST(NamedStates, SixSiteSetIsIndependent) {
  std::vector<CVector> cols;
  for (const auto& f : named_families())
    if (named_family_sites(f) == 6) cols.push_back(named_state(f).amplitudes());
  EXPECT_EQ(cols.size(), 5u);
  EXPECT_EQ(matrix_rank(CMatrix::from_columns(cols)), 5u);
}

TEST(NamedStates, ConjugatesDiffer) {
  EXPECT_LT(std::abs(inner(named_state("hs").amplitudes(), named_state("hs-conj").amplitudes())), 0.99);
  EXPECT_LT(std::abs(inner(named_state("six-a").amplitudes(), named_state("six-a-conj").amplitudes())), 0.99);
}
