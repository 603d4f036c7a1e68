#pragma once

// Singlet coverings (valence-bond products), Rumer diagrams and the map from
// Rumer coefficients to sector amplitudes.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "vbent/linalg.hpp"
#include "vbent/spin.hpp"

namespace vbent {

/// Oriented singlet: |up_first down_second> - |down_first up_second>.
struct Bond {
  int first;
  int second;
};

/// Perfect matching of sites 1..n, stored canonically: i < j inside each pair,
/// pairs sorted by their first site.
class Matching {
 public:
  Matching(int n, std::vector<std::pair<int, int>> pairs);

  int sites() const { return n_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  /// True if any two bonds cross as chords of a circle through 1..n.
  bool is_crossing() const;
  /// Partner of a site.
  int partner(int site) const;

  bool operator==(const Matching& o) const { return n_ == o.n_ && pairs_ == o.pairs_; }

 private:
  int n_;
  std::vector<std::pair<int, int>> pairs_;
};

/// Chords (a,b) and (c,d), a<b and c<d, cross iff exactly one of c,d lies strictly between a and b.
bool chords_cross(std::pair<int, int> p, std::pair<int, int> q);

/// Non-crossing perfect matchings, ordered lexicographically by pair list.
std::vector<Matching> enumerate_rumer(int n);
/// All (n-1)!! perfect matchings; n <= 10.
std::vector<Matching> enumerate_all_matchings(int n);

std::size_t catalan(int k);
std::size_t binomial(int n, int k);
/// C(n, n/2) - C(n, n/2 - 1): dimension of the total-singlet space.
std::size_t singlet_count(int n);

/// Bond-sign convention for vb states.
///  Ascending: every bond is written as (min, max).
///  AsWritten: bonds keep the order they were given in.
enum class Orientation { Ascending, AsWritten };

/// Unnormalized amplitudes (entries 0 or +-1) of a singlet product over the Sz=0 sector.
CVector vb_amplitudes(int n, std::span<const Bond> bonds, Orientation orientation = Orientation::Ascending);
CVector vb_amplitudes(const Matching& m);

PureState vb_state(const Matching& m, Normalization mode = Normalization::Normalize);
PureState vb_state(int n, std::span<const Bond> bonds, Orientation orientation,
                   Normalization mode = Normalization::Normalize);

struct RumerMap {
  int n = 0;
  std::vector<Matching> matchings;
  CMatrix m;  ///< rows: sector configurations, columns: matchings
  std::size_t rank = 0;
};

/// n even in 2..10. Throws Error if the numerical rank differs from singlet_count(n).
RumerMap rumer_map(int n);

/// Largest |(13)(24) - (12)(34) - (14)(23)| entry on unnormalized amplitudes.
double crossing_identity_residual();
/// Largest least-squares residual of a crossing matching's state against the Rumer span.
double crossing_span_residual(int n);
/// n = 4: the three-term identity within 1e-12; other even n <= 10: every
/// crossing state inside the Rumer span within 1e-10.
bool crossing_identity_check(int n);

struct RumerExpansion {
  CVector coefficients;  ///< one per matching of the map
  double residual;       ///< |M c - psi| for the state as given
};
RumerExpansion rumer_coefficients(const RumerMap& map, const PureState& psi);

}  // namespace vbent
