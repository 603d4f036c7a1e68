#include "vbent/phasor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "vbent/errors.hpp"

namespace vbent {

namespace {

constexpr double kConsistency = 1e-9;

// z_u = rel[u] * z_parent[u]
struct PhaseForest {
  std::vector<std::size_t> parent;
  CVector rel;

  explicit PhaseForest(std::size_t n) : parent(n), rel(n, 1.0) {
    for (std::size_t u = 0; u < n; ++u) parent[u] = u;
  }

  std::pair<std::size_t, cplx> find(std::size_t u) const {
    cplx ph = 1.0;
    while (parent[u] != u) {
      ph *= rel[u];
      u = parent[u];
    }
    return {u, ph};
  }

  // Imposes z_b = r z_a; false on conflict.
  bool relate(std::size_t a, std::size_t b, cplx r) {
    const auto [ra, pa] = find(a);
    const auto [rb, pb] = find(b);
    if (ra == rb) return std::abs(pb - r * pa) <= kConsistency;
    parent[rb] = ra;
    rel[rb] = r * pa / pb;
    return true;
  }
};

using Link = std::tuple<std::size_t, std::size_t, cplx>;

// Alternative constraint sets that make one equation vanish.
std::vector<std::vector<Link>> branches(const PhasorEquation& e) {
  auto neg = [&](std::size_t x, std::size_t y) -> Link {
    return {e[x].unknown, e[y].unknown, cplx(-e[x].sign * e[y].sign)};
  };
  switch (e.size()) {
    case 2:
      return {{neg(0, 1)}};
    case 3: {
      std::vector<std::vector<Link>> out;
      const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
      for (cplx ww : {w, std::conj(w)}) {
        const double s01 = e[0].sign * e[1].sign, s02 = e[0].sign * e[2].sign;
        out.push_back({Link{e[0].unknown, e[1].unknown, ww * s01}, Link{e[0].unknown, e[2].unknown, ww * ww * s02}});
      }
      return out;
    }
    case 4:
      return {{neg(0, 1), neg(2, 3)}, {neg(0, 2), neg(1, 3)}, {neg(0, 3), neg(1, 2)}};
    default:
      throw Unsupported("phasor equations need 2 to 4 terms, got " + std::to_string(e.size()));
  }
}

PhasorFamily to_family(const PhaseForest& f) {
  const std::size_t n = f.parent.size();
  PhasorFamily fam;
  fam.component.assign(n, 0);
  fam.offset.assign(n, 1.0);
  std::vector<std::size_t> root_of_comp;
  std::vector<cplx> first_phase;
  for (std::size_t u = 0; u < n; ++u) {
    const auto [r, ph] = f.find(u);
    auto it = std::find(root_of_comp.begin(), root_of_comp.end(), r);
    std::size_t c;
    if (it == root_of_comp.end()) {
      c = root_of_comp.size();
      root_of_comp.push_back(r);
      first_phase.push_back(ph);
    } else {
      c = static_cast<std::size_t>(it - root_of_comp.begin());
    }
    fam.component[u] = c;
    fam.offset[u] = ph / first_phase[c];
  }
  fam.components = std::max<std::size_t>(1, root_of_comp.size());
  return fam;
}

bool same_family(const PhasorFamily& a, const PhasorFamily& b) {
  if (a.component != b.component) return false;
  for (std::size_t u = 0; u < a.offset.size(); ++u)
    if (std::abs(a.offset[u] - b.offset[u]) > 1e-9) return false;
  return true;
}

}  // namespace

CVector PhasorFamily::evaluate(std::span<const double> phases) const {
  if (phases.size() != free_phases())
    throw InvalidState("family has " + std::to_string(free_phases()) + " free phases, got " +
                       std::to_string(phases.size()));
  CVector z(offset.size());
  for (std::size_t u = 0; u < z.size(); ++u) {
    const std::size_t c = component[u];
    z[u] = c == 0 ? offset[u] : offset[u] * std::polar(1.0, phases[c - 1]);
  }
  return z;
}

double phasor_residual(const PhasorSystem& sys, std::span<const cplx> z) {
  double worst = 0.0;
  for (const auto& e : sys.equations) {
    cplx s = 0.0;
    for (const auto& t : e) s += static_cast<double>(t.sign) * z[t.unknown];
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

std::vector<PhasorFamily> solve_phasor_system(const PhasorSystem& sys) {
  for (const auto& e : sys.equations) {
    if (e.size() < 2 || e.size() > 4)
      throw Unsupported("phasor equations need 2 to 4 terms, got " + std::to_string(e.size()));
    for (const auto& t : e) {
      if (t.unknown >= sys.unknowns) throw InvalidState("phasor term refers to a missing unknown");
      if (t.sign != 1 && t.sign != -1) throw InvalidState("phasor term sign must be +1 or -1");
    }
  }
  if (sys.unknowns == 0) throw NoSolution("system without unknowns");

  std::vector<PhasorFamily> found;
  auto rec = [&](auto&& self, std::size_t k, const PhaseForest& forest) -> void {
    if (k == sys.equations.size()) {
      PhasorFamily fam = to_family(forest);
      for (const auto& f : found)
        if (same_family(f, fam)) return;
      found.push_back(std::move(fam));
      return;
    }
    for (const auto& links : branches(sys.equations[k])) {
      PhaseForest next = forest;
      bool ok = true;
      for (const auto& [a, b, r] : links)
        if (!(ok = next.relate(a, b, r))) break;
      if (ok) self(self, k + 1, next);
    }
  };
  rec(rec, 0, PhaseForest(sys.unknowns));
  if (found.empty()) throw NoSolution("no unit-modulus assignment satisfies the system");

  std::stable_sort(found.begin(), found.end(),
                   [](const PhasorFamily& a, const PhasorFamily& b) { return a.components < b.components; });

  // Exactness check at a generic point of every family.
  for (const auto& f : found) {
    std::vector<double> ph(f.free_phases());
    for (std::size_t k = 0; k < ph.size(); ++k) ph[k] = 0.3 + 0.7 * static_cast<double>(k);
    const CVector z = f.evaluate(ph);
    if (phasor_residual(sys, z) > 1e-12) throw Error("phasor family violates its equations");
  }
  return found;
}

PhasorSystem independent_subsystem(const PhasorSystem& sys) {
  PhasorSystem out;
  out.unknowns = sys.unknowns;
  OrthonormalSet rows(sys.unknowns);
  for (const auto& e : sys.equations) {
    CVector row(sys.unknowns);
    for (const auto& t : e) row[t.unknown] += static_cast<double>(t.sign);
    if (norm(row) > 0.0 && rows.try_add(row)) out.equations.push_back(e);
  }
  return out;
}

}  // namespace vbent
