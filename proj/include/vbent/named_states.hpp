#pragma once

// Closed-form maximal states for four and six spins, written out amplitude by
// amplitude, and the singlet-product forms they come from.

#include <string>
#include <vector>

#include "vbent/spin.hpp"

namespace vbent {

/// hs, hs-conj, six-a, six-a-conj, six-b, six-c, six-c-conj
const std::vector<std::string>& named_families();
bool is_named_family(const std::string& name);
/// 4 for the hs family, 6 for the six-* families.
int named_family_sites(const std::string& name);

/// The expanded amplitude list (omega = e^{2 pi i/3} for hs, i for six-*).
/// Throws InvalidState for unknown names.
PureState named_state(const std::string& name, Normalization mode = Normalization::Normalize);

/// The same state assembled from its singlet products with the bond order as
/// printed (e.g. (6,1) kept as written). Unnormalized.
PureState named_state_from_bonds(const std::string& name);

}  // namespace vbent
