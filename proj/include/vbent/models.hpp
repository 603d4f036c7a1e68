#pragma once

// Heisenberg Hamiltonians in the Sz=0 sector: the isotropic infinite-range model
// (every pair coupled with J = J*/(n-1)) and nearest-neighbour rings and chains.

#include <string>
#include <vector>

#include "vbent/linalg.hpp"
#include "vbent/spin.hpp"

namespace vbent {

enum class Model { Iirhm, HeisenbergRing, HeisenbergChain };

std::string model_name(Model m);
/// "iirhm", "ring" or "chain"; throws ParseError otherwise.
Model parse_model(const std::string& s);

struct HamiltonianSpec {
  int n = 4;
  Model model = Model::Iirhm;
  double j_star = 1.0;

  /// J*/(n-1) for the infinite-range model, J* otherwise.
  double coupling() const;
  std::vector<Coupling> couplings() const;
};

/// Throws InvalidSize unless n is even in 4..12, DomainError for a zero or non-finite J*.
void validate(const HamiltonianSpec& spec);

/// Dense Sz=0 sector matrix. The infinite-range model is cross-checked against
/// (J/2)(S^2 - 3n/4), with S^2 assembled from the total ladder operators.
CMatrix build_hamiltonian(const HamiltonianSpec& spec);

/// (J/2)[S(S+1) - 3n/4].
double iirhm_energy(int n, double j_star, int s_total);
/// Number of Sz=0 states with total spin S: C(n, n/2-S) - C(n, n/2-S-1).
std::size_t sector_multiplicity(int n, int s_total);

struct Level {
  double energy;
  std::size_t multiplicity;
  int s_total;  ///< from <S^2> of the eigenspace
};

struct SpectrumReport {
  HamiltonianSpec spec;
  std::vector<Level> levels;  ///< ascending energy
  double ground_energy = 0.0;
  std::size_t ground_degeneracy = 0;
  bool analytic_ok = true;           ///< infinite-range model only
  double analytic_deviation = 0.0;   ///< largest |E - E(S)| over levels
};

SpectrumReport spectrum(const HamiltonianSpec& spec);

struct GroundStateCheck {
  bool is_ground = false;
  double residual = 0.0;  ///< |H psi - E0 psi|
  double energy = 0.0;    ///< <psi|H|psi>
};

/// Infinite-range model only (Unsupported otherwise): |H psi - E0 psi| <= 1e-10 |H|.
GroundStateCheck is_ground_state(const HamiltonianSpec& spec, const PureState& psi);

/// |sum_c S_i . S_j psi| for a normalized copy of psi.
double exchange_residual(const PureState& psi, std::span<const Coupling> couplings);
/// (S1.S3 + S2.S4 + S1.S4 + S2.S3) annihilates singlet(1,2) singlet(3,4).
bool four_site_identity_check();

struct PairEntropy {
  int i;
  int j;
  double entropy;
};

struct RingBaseline {
  explicit RingBaseline(PureState g) : ground_state(std::move(g)) {}

  PureState ground_state;
  double ground_energy = 0.0;
  double szsz_nn = 0.0;
  double szsz_nnn = 0.0;
  std::vector<PairEntropy> pair_entropies;
  double nn_entropy = 0.0;
  double nnn_entropy = 0.0;
  double e2v_all_pairs = 0.0;
  double commutator_sz = 0.0;  ///< |[H, Sz_total]| in the full 2^n space
  double commutator_s2 = 0.0;  ///< |[H, S^2_total]|
};

/// Four-site ring (or open chain) ground state and its pair correlations.
RingBaseline ring_baseline(int n = 4, Model model = Model::HeisenbergRing, double j_star = 1.0);

}  // namespace vbent
