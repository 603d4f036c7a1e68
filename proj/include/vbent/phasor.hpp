#pragma once

// Systems of equations sum_t sign_t z_{u_t} = 0 over unit-modulus unknowns z_u.

#include <cstddef>
#include <span>
#include <vector>

#include "vbent/linalg.hpp"

namespace vbent {

struct PhasorTerm {
  int sign;  ///< +1 or -1
  std::size_t unknown;
};

using PhasorEquation = std::vector<PhasorTerm>;

struct PhasorSystem {
  std::size_t unknowns = 0;
  std::vector<PhasorEquation> equations;
};

/// A solution family: z_u = offset[u] * exp(i theta[component[u]]) with
/// theta[0] = 0 fixing the global phase. Every other component carries a
/// continuous phase parameter.
struct PhasorFamily {
  std::vector<std::size_t> component;
  CVector offset;
  std::size_t components = 1;

  std::size_t free_phases() const { return components - 1; }
  /// phases.size() must equal free_phases().
  CVector evaluate(std::span<const double> phases) const;
};

/// Every equation must have 2, 3 or 4 terms (Unsupported otherwise). Four-term
/// equations split into antipodal pairs, three-term ones into the cube-root-of-unity
/// triangle, two-term ones fix z_b = -s_a s_b z_a. Families are distinct up to the
/// global phase. Throws NoSolution when nothing is consistent.
std::vector<PhasorFamily> solve_phasor_system(const PhasorSystem& sys);

/// Largest |sum_t sign_t z_{u_t}| over the equations.
double phasor_residual(const PhasorSystem& sys, std::span<const cplx> z);

/// Greedy subset of equations whose coefficient rows are linearly independent.
PhasorSystem independent_subsystem(const PhasorSystem& sys);

}  // namespace vbent
