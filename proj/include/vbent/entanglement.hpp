#pragma once

// Entanglement measures for pairs of spins. Entropies are in bits.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vbent/linalg.hpp"
#include "vbent/spin.hpp"

namespace vbent {

/// -sum lambda log2 lambda over the spectrum of rho. Eigenvalues in [-1e-10, 0)
/// count as zero; anything more negative throws InvalidDensityMatrix.
double von_neumann_entropy(const CMatrix& rho);
inline double entropy(const TwoQubitRDM& rho) { return von_neumann_entropy(rho.m); }

/// Pair entropy of a rotationally invariant two-spin state with <Sz Sz> = c.
/// Domain -1/4 <= c <= 1/12, else DomainError.
double entropy_closed_form(double c);
/// d/dc of entropy_closed_form.
double entropy_closed_form_derivative(double c);

double purity(const CMatrix& rho);
/// sqrt(2 (1 - Tr rho^2)) for a pair with <Sz Sz> = c under isotropy.
double iconcurrence_closed_form(double c);

/// Pair-averaged entropy over all n(n-1)/2 pairs.
double e2v(const PureState& psi);
/// Largest e2v an isotropic Sz=0 state of n sites can reach; n even >= 4.
double e2v_max(int n);
/// Pair-averaged i-concurrence.
double iconcurrence(const PureState& psi);
/// i-concurrence reached by the homogeneous isotropic states.
double ic_max(int n);

double wootters_concurrence(const CMatrix& rho);
inline double wootters_concurrence(const TwoQubitRDM& rho) { return wootters_concurrence(rho.m); }

/// p |singlet><singlet| + (1-p)/4 I in the |uu>,|ud>,|du>,|dd> order.
CMatrix werner_matrix(double p);
/// Werner parameter -4/3 <S_i . S_j>. Throws NotRotationallyInvariant when the
/// pair matrix deviates from werner_matrix(p) by more than tol in any entry.
double werner_p(const PureState& psi, int i, int j, double tol = 1e-9);
/// Reference value 1/3 + 2/(3n) quoted for the RVB gas; no state is built.
double rvb_gas_p(int n);

struct BoundComparison {
  int n;
  double p_exact;
  double p_monogamy;
  double p_telecloning;
  bool ordered;  ///< p_exact <= p_telecloning <= p_monogamy
};
BoundComparison bound_comparison(int n);

struct PairMeasure {
  int i;
  int j;
  double szsz;
  cplx spsm;
  double sdots;
  double entropy;
  double purity;
  double iconc_term;
  double wootters;
  std::optional<double> werner_p;  ///< absent when the pair is not of Werner form
};

PairMeasure measure_pair(const PureState& psi, int i, int j);

struct EntanglementReport {
  int n = 0;
  std::vector<PairMeasure> pairs;
  double e2v = 0.0;  ///< over the measured pairs
  double e2v_max = 0.0;
  double ic = 0.0;
  bool homogeneous = false;
  bool isotropic = false;
};

/// Measures the listed pairs, or every pair when the list is empty.
EntanglementReport measure(const PureState& psi, std::span<const std::pair<int, int>> pairs = {});

enum class Objective { Entropy, IConcurrence };

struct OptimalityCheck {
  bool passed = false;
  std::size_t samples = 0;
  double uniform_value = 0.0;
  double best_sampled = 0.0;
  double max_excess = 0.0;  ///< best_sampled - uniform_value
};

/// Samples site correlations c_j (j != i) in [-1/4, 1/12] with sum -1/4 and
/// compares the summed objective with the uniform point c_j = -1/(4(n-1)).
/// Half the samples come from the flat simplex, half from small zero-sum moves
/// around the uniform point. Deterministic for a given seed.
OptimalityCheck verify_homogeneity_optimal(int n, std::size_t trials, std::uint64_t seed,
                                           Objective objective = Objective::Entropy);

struct CurveRow {
  int n;
  double value;
  double ratio;  ///< value divided by its n -> infinity limit
};
/// Rows for n = 4, 6, ..., n_max.
std::vector<CurveRow> e2v_max_curve(int n_max);
std::vector<CurveRow> ic_max_curve(int n_max);

}  // namespace vbent
