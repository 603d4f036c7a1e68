#pragma once

// Construction and certification of states with maximal pair-averaged entropy.
//
// Two exact routes for n = 4, 6:
//  homogenize_isotropic    start from the Rumer span (isotropic) and demand equal |amplitude|;
//  isotropize_homogeneous  start from equal |amplitude| and demand S+_total psi = 0.
// Both reduce to unit-phasor systems over the C(n,n/2)/2 spin-flip representatives.
// torus_search handles general even n numerically.

#include <cstdint>
#include <span>
#include <vector>

#include "vbent/phasor.hpp"
#include "vbent/spin.hpp"

namespace vbent {

struct CertificateTolerances {
  double isotropy = 1e-10;
  double homogeneity = 1e-9;
  double e2v = 1e-9;
};

struct MaximalityCertificate {
  bool is_sz0 = false;
  bool is_isotropic = false;
  bool is_homogeneous = false;  ///< full sector support and equal |amplitude|
  bool flip_parity_ok = false;
  bool e2v_equals_max = false;

  double sp_residual = 0.0;
  double sm_residual = 0.0;
  double amplitude_spread = 0.0;
  bool full_support = false;
  double flip_parity_residual = 0.0;
  double e2v = 0.0;
  double e2v_max = 0.0;

  bool valid() const { return is_sz0 && is_isotropic && is_homogeneous && flip_parity_ok && e2v_equals_max; }
};

MaximalityCertificate verify_maximal(const PureState& psi, const CertificateTolerances& tol = {});

/// Sz=0 configurations c with c < flip(c), ascending; unknown u of the phasor
/// systems is the amplitude of flip_representatives(n)[u].
std::vector<Config> flip_representatives(int n);

/// Expands representative amplitudes z into the sector with amp(flip c) = (-1)^(n/2) amp(c).
PureState expand_flip_symmetric(int n, std::span<const cplx> z);

/// One equation per configuration with n/2+1 up spins: the S+_total annihilation conditions.
PhasorSystem isotropy_equations(int n);
/// Unit-coefficient linear relations (circuits of at most four rows) among the
/// representative rows of the Rumer map; an equal-magnitude vector satisfying them
/// lies in the Rumer span. n in {4, 6}.
PhasorSystem rumer_span_equations(int n);

struct ExactRouteReport {
  PhasorSystem raw;
  PhasorSystem reduced;
  std::vector<PhasorFamily> families;
  std::size_t candidates = 0;  ///< sampled family members tried
  std::vector<PureState> states;  ///< certified, linearly independent, gauge fixed
};

ExactRouteReport homogenize_isotropic_report(int n, std::uint64_t seed = 1);
ExactRouteReport isotropize_homogeneous_report(int n, std::uint64_t seed = 1);

/// n in {4, 6}; throws Unsupported otherwise.
std::vector<PureState> homogenize_isotropic(int n, std::uint64_t seed = 1);
std::vector<PureState> isotropize_homogeneous(int n, std::uint64_t seed = 1);

/// Pair-averaged entropy of the normalized Rumer-span state Q x, where Q is an
/// orthonormal basis of the span and x holds (Re, Im) pairs.
class SpanEntropyObjective {
 public:
  explicit SpanEntropyObjective(int n);

  int sites() const { return n_; }
  std::size_t dimension() const { return 2 * q_.cols(); }
  const CMatrix& span_basis() const { return q_; }

  double value(std::span<const double> x) const;
  /// Analytic gradient of value() with respect to x.
  std::vector<double> gradient(std::span<const double> x) const;
  CVector amplitudes(std::span<const double> x) const;

 private:
  std::vector<double> pair_correlations(const CVector& psi) const;

  int n_;
  CMatrix q_;
  std::vector<std::vector<double>> sigma_;  // [pair][config]: s_i s_j
};

struct TorusRun {
  double e2v = 0.0;
  bool reached_max = false;
  double spread = 0.0;          ///< relative |amplitude| spread at the e2v optimum
  double torus_residual = 0.0;  ///< |(1-P)u| after polishing, P the span projector, |u| = 1
  bool certified = false;
};

struct TorusResult {
  std::vector<PureState> states;  ///< certified, linearly independent
  std::vector<TorusRun> runs;
  std::size_t reached_max = 0;
  std::size_t certified_runs = 0;
  double best_e2v = 0.0;
  double best_torus_residual = 0.0;
  double gradient_check_error = 0.0;  ///< analytic vs central difference, first start point
};

/// Gradient ascent of e2v over the Rumer span from `restarts` seeded starts.
/// Runs within 1e-7 of e2v_max(n) get their phases polished onto the span
/// (Levenberg-Marquardt on |(1-P) u|, |u_k| all equal) and are kept when
/// verify_maximal passes. n even in 4..10.
TorusResult torus_search(int n, std::uint64_t seed, std::size_t restarts);

}  // namespace vbent
