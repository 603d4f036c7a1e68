#include "vbent/named_states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vbent/errors.hpp"
#include "vbent/vb_basis.hpp"

namespace vbent {

namespace {

struct Group {
  int power;  // coefficient omega^power
  std::vector<const char*> plus;
  std::vector<const char*> minus;
};

const std::vector<Group> kHs = {
    {0, {"udud", "dudu"}, {}},
    {1, {"uddu", "duud"}, {}},
    {2, {"uudd", "dduu"}, {}},
};

const std::vector<Group> kSixA = {
    {0, {"ududud"}, {"dududu"}},
    {1, {"uduudd", "uddduu", "duudud"}, {"uddudu", "duuudd", "dudduu"}},
    {2, {"uuddud", "ududdu", "dduuud"}, {"uudddu", "duduud", "dduudu"}},
    {3, {"uuuddd", "dduduu", "udduud"}, {"uududd", "duuddu", "ddduuu"}},
};

const std::vector<Group> kSixC = {
    {0, {"ududud"}, {"dududu"}},
    {1, {"ududdu", "udduud", "duudud"}, {"uddudu", "duuddu", "duduud"}},
    {2, {"uuuddd", "uddduu", "dduuud"}, {"uudddu", "duuudd", "ddduuu"}},
    {3, {"uuddud", "uduudd", "dduduu"}, {"uududd", "dudduu", "dduudu"}},
};

cplx omega(int root, int power) { return std::polar(1.0, 2.0 * std::numbers::pi * power / root); }

PureState expand(int n, const std::vector<Group>& groups, auto coefficient, Normalization mode) {
  const auto basis = sector_basis(n);
  CVector amp(basis->size());
  for (const auto& g : groups) {
    const cplx c = coefficient(g.power);
    for (const char* s : g.plus) amp[*basis->index_of(bits_to_config(s))] += c;
    for (const char* s : g.minus) amp[*basis->index_of(bits_to_config(s))] -= c;
  }
  return PureState(basis, std::move(amp), mode);
}

std::string base_name(const std::string& name) {
  const std::string suffix = "-conj";
  if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
    return name.substr(0, name.size() - suffix.size());
  return name;
}

bool wants_conj(const std::string& name) { return base_name(name) != name; }

}  // namespace

const std::vector<std::string>& named_families() {
  static const std::vector<std::string> names = {"hs",    "hs-conj", "six-a",     "six-a-conj",
                                                 "six-b", "six-c",   "six-c-conj"};
  return names;
}

bool is_named_family(const std::string& name) {
  const auto& n = named_families();
  return std::find(n.begin(), n.end(), name) != n.end();
}

int named_family_sites(const std::string& name) {
  if (!is_named_family(name)) throw InvalidState("unknown state family '" + name + "'");
  return base_name(name) == "hs" ? 4 : 6;
}

PureState named_state(const std::string& name, Normalization mode) {
  if (!is_named_family(name)) throw InvalidState("unknown state family '" + name + "'");
  const std::string base = base_name(name);
  PureState psi = [&] {
    if (base == "hs") return expand(4, kHs, [](int p) { return omega(3, p); }, mode);
    if (base == "six-a") return expand(6, kSixA, [](int p) { return omega(4, p); }, mode);
    if (base == "six-c") return expand(6, kSixC, [](int p) { return omega(4, p); }, mode);
    // six-b: the six-a layout with coefficients (1, -1, 1, -1)
    return expand(6, kSixA, [](int p) { return cplx(p % 2 == 0 ? 1.0 : -1.0); }, mode);
  }();
  return wants_conj(name) ? psi.conj() : psi;
}

PureState named_state_from_bonds(const std::string& name) {
  if (!is_named_family(name)) throw InvalidState("unknown state family '" + name + "'");
  const std::string base = base_name(name);
  struct Term {
    cplx c;
    std::vector<Bond> bonds;
  };
  std::vector<Term> terms;
  int n = 6;
  const cplx i{0.0, 1.0};
  if (base == "hs") {
    n = 4;
    terms = {{omega(3, 1), {{1, 2}, {3, 4}}}, {omega(3, 2), {{4, 1}, {2, 3}}}};
  } else if (base == "six-a") {
    terms = {{i, {{1, 2}, {3, 6}, {4, 5}}}, {i * i, {{2, 3}, {1, 4}, {5, 6}}}, {i * i * i, {{1, 6}, {2, 5}, {3, 4}}}};
  } else if (base == "six-b") {
    terms = {{-1.0, {{1, 2}, {3, 6}, {4, 5}}}, {1.0, {{2, 3}, {1, 4}, {5, 6}}}, {-1.0, {{1, 6}, {2, 5}, {3, 4}}}};
  } else {
    terms = {{i, {{1, 2}, {3, 4}, {6, 5}}}, {i * i, {{1, 4}, {2, 5}, {3, 6}}}, {i * i * i, {{6, 1}, {2, 3}, {4, 5}}}};
  }
  CVector amp(sector_basis(n)->size());
  for (const auto& t : terms) {
    const CVector v = vb_amplitudes(n, t.bonds, Orientation::AsWritten);
    for (std::size_t k = 0; k < amp.size(); ++k) amp[k] += t.c * v[k];
  }
  PureState psi(sector_basis(n), std::move(amp), Normalization::Keep);
  return wants_conj(name) ? psi.conj() : psi;
}

}  // namespace vbent
