#pragma once

// Spin-1/2 configuration bases, state vectors, spin operators and partial traces.
//
// Convention: site s (1-based) is bit s-1 of a configuration; a set bit is |up>.
// Two-site matrices use the row order |uu>, |ud>, |du>, |dd> of (site i, site j).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "vbent/linalg.hpp"

namespace vbent {

using Config = std::uint32_t;

inline constexpr int kMaxSites = 12;

/// Ordered list of configurations: either a fixed-magnetization sector or the
/// full 2^n space. Configurations are strictly ascending as integers.
class SpinBasis {
 public:
  /// All configurations of n sites with exactly n_up up-spins.
  static std::shared_ptr<const SpinBasis> sector(int n, int n_up);
  /// All 2^n configurations.
  static std::shared_ptr<const SpinBasis> full(int n);

  int sites() const { return n_; }
  std::optional<int> up_count() const { return n_up_; }
  bool is_sz0() const { return n_up_ && 2 * *n_up_ == n_; }
  std::size_t size() const { return states_.size(); }
  Config config(std::size_t k) const { return states_[k]; }
  const std::vector<Config>& configs() const { return states_; }
  /// Position of c, or std::nullopt if c is not part of this basis.
  std::optional<std::size_t> index_of(Config c) const;

 private:
  SpinBasis(int n, std::optional<int> n_up);

  int n_;
  std::optional<int> n_up_;
  std::vector<Config> states_;
  std::vector<std::int32_t> index_;  // size 2^n, -1 when absent
};

using BasisPtr = std::shared_ptr<const SpinBasis>;

/// The S^z_total = 0 sector; n must be even with 2 <= n <= 12.
BasisPtr sector_basis(int n);

inline bool is_up(Config c, int site) { return (c >> (site - 1)) & 1u; }
inline double sz_value(Config c, int site) { return is_up(c, site) ? 0.5 : -0.5; }
inline Config flip_all(Config c, int n) { return c ^ ((Config{1} << n) - 1); }

/// "udud..." with site 1 leftmost.
std::string config_to_bits(Config c, int n);
/// Inverse of config_to_bits; accepts 'u'/'d' (also '1'/'0').
Config bits_to_config(std::string_view bits);

/// Raw amplitude vector over a basis, e.g. the result of S^+_total.
struct SectorVector {
  BasisPtr basis;
  CVector amp;

  double norm() const { return vbent::norm(amp); }
};

enum class Normalization { Normalize, Keep };

/// Pure state over a basis. Normalized on construction unless asked not to;
/// the un-normalized form exists for literal coefficient comparisons.
class PureState {
 public:
  PureState(BasisPtr basis, CVector amp, Normalization mode = Normalization::Normalize);

  const BasisPtr& basis() const { return basis_; }
  int sites() const { return basis_->sites(); }
  const CVector& amplitudes() const { return amp_; }
  cplx amplitude(Config c) const;
  bool normalized() const { return normalized_; }
  double norm() const { return vbent::norm(amp_); }

  PureState normalized_copy() const;
  PureState conj() const;
  /// First nonzero amplitude made positive real.
  PureState gauge_fixed() const;
  SectorVector as_vector() const { return {basis_, amp_}; }

 private:
  BasisPtr basis_;
  CVector amp_;
  bool normalized_;
};

// Correlators. States that are not normalized are normalized internally.
double szsz(const PureState& psi, int i, int j);
cplx spsm(const PureState& psi, int i, int j);
/// <S_i . S_j> = <Sz Sz> + Re <S+ S->; exactly real for any state.
double sdots(const PureState& psi, int i, int j);
double sz(const PureState& psi, int i);

struct TwoQubitRDM {
  CMatrix m;  ///< 4x4, rows |uu>,|ud>,|du>,|dd>
  int i = 0;
  int j = 0;
};

/// Reduced density matrix of the listed sites (partial trace over the rest).
/// Local index bit (k-1-pos) is set when sites[pos] is down, so up-first ordering.
CMatrix reduced_density_matrix(const PureState& psi, std::span<const int> sites);

TwoQubitRDM rdm2(const PureState& psi, int i, int j);

/// Single-site reduced density matrix from <Sz>, <S+>, <S->, in (|u>,|d>) order.
CMatrix rdm1(const PureState& psi, int i);
/// The same matrix in the (|d>,|u>) order used by the classic textbook form.
CMatrix to_down_up_order(const CMatrix& rho_up_down);

/// Expands a state into the full 2^n basis.
PureState to_full_basis(const PureState& psi);

SectorVector apply_sp_total(const SectorVector& v);
SectorVector apply_sm_total(const SectorVector& v);
inline SectorVector apply_sp_total(const PureState& psi) { return apply_sp_total(psi.as_vector()); }
inline SectorVector apply_sm_total(const PureState& psi) { return apply_sm_total(psi.as_vector()); }

struct Coupling {
  int i;
  int j;
  double strength;
};

/// sum_c strength_c S_i . S_j applied to v (stays in the same basis).
SectorVector apply_exchange(const SectorVector& v, std::span<const Coupling> couplings);
/// Dense matrix of sum_c strength_c S_i . S_j in the given basis.
CMatrix exchange_matrix(const SpinBasis& basis, std::span<const Coupling> couplings);
/// All pairs i<j with the same strength.
std::vector<Coupling> all_pairs(int n, double strength);

/// S^2_total applied to a vector.
SectorVector apply_s2_total(const SectorVector& v);

struct TotalSpin {
  double mean;      ///< <S^2>
  double variance;  ///< <S^4> - <S^2>^2
};
TotalSpin s2_total(const PureState& psi);

/// Relative spread (max-min)/mean of |amp| over the basis and whether every
/// configuration has a nonzero amplitude.
struct AmplitudeProfile {
  double relative_spread;
  bool full_support;
};
AmplitudeProfile amplitude_profile(const PureState& psi);

/// |S^+_total psi| and |S^-_total psi| for a normalized copy of psi.
std::pair<double, double> isotropy_residuals(const PureState& psi);

}  // namespace vbent
