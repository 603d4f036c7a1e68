#include "vbent/models.hpp"

#include <algorithm>
#include <cmath>

#include "vbent/entanglement.hpp"
#include "vbent/errors.hpp"
#include "vbent/vb_basis.hpp"

namespace vbent {

namespace {

// S^2 = S- S+ + Sz^2 + Sz, assembled column by column from the ladder operators.
CMatrix s2_matrix(const BasisPtr& basis) {
  const std::size_t d = basis->size();
  CMatrix s2(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    SectorVector e{basis, CVector(d)};
    e.amp[k] = 1.0;
    const SectorVector up = apply_sp_total(e);
    if (up.norm() > 0.0) {
      const SectorVector back = apply_sm_total(up);  // same configuration list as basis
      for (std::size_t r = 0; r < d; ++r) s2(r, k) = back.amp[r];
    }
    double mz = 0.0;
    for (int s = 1; s <= basis->sites(); ++s) mz += sz_value(basis->config(k), s);
    s2(k, k) += mz * mz + mz;
  }
  return s2;
}

double operator_norm(const CMatrix& a) { return singular_values(a).front(); }

}  // namespace

std::string model_name(Model m) {
  switch (m) {
    case Model::Iirhm:
      return "iirhm";
    case Model::HeisenbergRing:
      return "ring";
    case Model::HeisenbergChain:
      return "chain";
  }
  return "?";
}

Model parse_model(const std::string& s) {
  if (s == "iirhm") return Model::Iirhm;
  if (s == "ring") return Model::HeisenbergRing;
  if (s == "chain") return Model::HeisenbergChain;
  throw ParseError("unknown model '" + s + "' (expected iirhm, ring or chain)");
}

double HamiltonianSpec::coupling() const { return model == Model::Iirhm ? j_star / (n - 1) : j_star; }

std::vector<Coupling> HamiltonianSpec::couplings() const {
  const double j = coupling();
  switch (model) {
    case Model::Iirhm:
      return all_pairs(n, j);
    case Model::HeisenbergRing:
    case Model::HeisenbergChain: {
      std::vector<Coupling> c;
      for (int i = 1; i < n; ++i) c.push_back({i, i + 1, j});
      if (model == Model::HeisenbergRing) c.push_back({1, n, j});
      return c;
    }
  }
  return {};
}

void validate(const HamiltonianSpec& spec) {
  if (spec.n % 2 != 0 || spec.n < 4 || spec.n > kMaxSites)
    throw InvalidSize("Hamiltonian needs even n in 4..12, got " + std::to_string(spec.n));
  if (!std::isfinite(spec.j_star) || spec.j_star == 0.0) throw DomainError("J* must be finite and nonzero");
}

CMatrix build_hamiltonian(const HamiltonianSpec& spec) {
  validate(spec);
  const auto basis = sector_basis(spec.n);
  const auto couplings = spec.couplings();
  CMatrix h = exchange_matrix(*basis, couplings);
  if (spec.model == Model::Iirhm) {
    CMatrix alt = s2_matrix(basis);
    for (std::size_t k = 0; k < alt.rows(); ++k) alt(k, k) -= 0.75 * spec.n;
    alt *= 0.5 * spec.coupling();
    const double dev = (h - alt).max_abs();
    if (dev > 1e-12 * std::max(1.0, h.max_abs()))
      throw Error("pair-sum Hamiltonian differs from (J/2)(S^2 - 3n/4) by " + std::to_string(dev));
  }
  return h;
}

double iirhm_energy(int n, double j_star, int s_total) {
  const double j = j_star / (n - 1);
  return 0.5 * j * (s_total * (s_total + 1.0) - 0.75 * n);
}

std::size_t sector_multiplicity(int n, int s_total) {
  return binomial(n, n / 2 - s_total) - binomial(n, n / 2 - s_total - 1);
}

SpectrumReport spectrum(const HamiltonianSpec& spec) {
  const CMatrix h = build_hamiltonian(spec);
  const auto basis = sector_basis(spec.n);
  const CMatrix s2 = s2_matrix(basis);
  const Spectrum sp = hermitian_eig(h);
  const std::size_t d = sp.values.size();
  const double scale = std::max(1.0, std::max(std::abs(sp.values.front()), std::abs(sp.values.back())));
  const double cluster_tol = 1e-8 * scale;

  SpectrumReport rep;
  rep.spec = spec;
  std::size_t start = 0;
  while (start < d) {
    std::size_t end = start + 1;
    while (end < d && sp.values[end] - sp.values[end - 1] <= cluster_tol) ++end;
    double e = 0.0;
    std::vector<CVector> cols;
    for (std::size_t k = start; k < end; ++k) {
      e += sp.values[k];
      cols.push_back(sp.vectors.column(k));
    }
    e /= static_cast<double>(end - start);
    // Total spin inside the eigenspace, safe under degeneracy.
    const CMatrix v = CMatrix::from_columns(cols);
    CMatrix local = v.adjoint() * s2 * v;
    local = (local + local.adjoint()) * 0.5;
    std::vector<int> spins;
    for (double x : hermitian_eig(local, false).values)
      spins.push_back(static_cast<int>(std::lround((std::sqrt(1.0 + 4.0 * std::max(0.0, x)) - 1.0) / 2.0)));
    std::sort(spins.begin(), spins.end());
    for (std::size_t a = 0; a < spins.size();) {
      std::size_t b = a;
      while (b < spins.size() && spins[b] == spins[a]) ++b;
      rep.levels.push_back({e, b - a, spins[a]});
      a = b;
    }
    start = end;
  }

  rep.ground_energy = rep.levels.front().energy;
  for (const auto& l : rep.levels)
    if (std::abs(l.energy - rep.ground_energy) <= cluster_tol) rep.ground_degeneracy += l.multiplicity;

  if (spec.model == Model::Iirhm) {
    for (const auto& l : rep.levels) {
      const double dev = std::abs(l.energy - iirhm_energy(spec.n, spec.j_star, l.s_total));
      rep.analytic_deviation = std::max(rep.analytic_deviation, dev);
      if (dev > 1e-10 || l.multiplicity != sector_multiplicity(spec.n, l.s_total)) rep.analytic_ok = false;
    }
    for (int s = 0; s <= spec.n / 2; ++s) {
      const bool present = std::any_of(rep.levels.begin(), rep.levels.end(), [s](const Level& l) { return l.s_total == s; });
      if (!present) rep.analytic_ok = false;
    }
  }
  return rep;
}

GroundStateCheck is_ground_state(const HamiltonianSpec& spec, const PureState& psi) {
  validate(spec);
  if (spec.model != Model::Iirhm) throw Unsupported("ground-state test is defined for the infinite-range model");
  if (psi.sites() != spec.n || !psi.basis()->is_sz0()) throw InvalidState("state is not in the Sz=0 sector of n sites");
  const PureState p = psi.normalized_copy();
  const auto couplings = spec.couplings();
  const SectorVector hv = apply_exchange(p.as_vector(), couplings);
  const double e0 = iirhm_energy(spec.n, spec.j_star, 0);
  double h_norm = 0.0;
  for (int s = 0; s <= spec.n / 2; ++s) h_norm = std::max(h_norm, std::abs(iirhm_energy(spec.n, spec.j_star, s)));

  GroundStateCheck out;
  double r = 0.0;
  cplx e = 0.0;
  for (std::size_t k = 0; k < hv.amp.size(); ++k) {
    r += std::norm(hv.amp[k] - e0 * p.amplitudes()[k]);
    e += std::conj(p.amplitudes()[k]) * hv.amp[k];
  }
  out.residual = std::sqrt(r);
  out.energy = e.real();
  out.is_ground = out.residual <= 1e-10 * h_norm;
  return out;
}

double exchange_residual(const PureState& psi, std::span<const Coupling> couplings) {
  return apply_exchange(psi.normalized_copy().as_vector(), couplings).norm();
}

bool four_site_identity_check() {
  const Bond bonds[] = {{1, 2}, {3, 4}};
  const PureState psi = vb_state(4, bonds, Orientation::Ascending);
  const Coupling cross[] = {{1, 3, 1.0}, {2, 4, 1.0}, {1, 4, 1.0}, {2, 3, 1.0}};
  return exchange_residual(psi, cross) <= 1e-12;
}

RingBaseline ring_baseline(int n, Model model, double j_star) {
  if (model == Model::Iirhm) throw Unsupported("baseline is defined for nearest-neighbour geometries");
  const HamiltonianSpec spec{n, model, j_star};
  const CMatrix h = build_hamiltonian(spec);
  const auto basis = sector_basis(n);
  const Spectrum sp = hermitian_eig(h);

  // Lowest eigenvector; inside a degenerate ground space take the S = 0 member.
  std::size_t deg = 1;
  while (deg < sp.values.size() && sp.values[deg] - sp.values[0] <= 1e-9 * std::max(1.0, std::abs(sp.values[0]))) ++deg;
  CVector g = sp.vectors.column(0);
  if (deg > 1) {
    std::vector<CVector> cols;
    for (std::size_t k = 0; k < deg; ++k) cols.push_back(sp.vectors.column(k));
    const CMatrix v = CMatrix::from_columns(cols);
    CMatrix local = v.adjoint() * s2_matrix(basis) * v;
    local = (local + local.adjoint()) * 0.5;
    const Spectrum ls = hermitian_eig(local);
    g = v * ls.vectors.column(0);
  }

  RingBaseline out(PureState(basis, g).gauge_fixed());
  out.ground_energy = sp.values[0];
  const PureState& psi = out.ground_state;
  out.szsz_nn = szsz(psi, 1, 2);
  out.szsz_nnn = szsz(psi, 1, 3);
  double sum = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const double s = entropy(rdm2(psi, i, j));
      out.pair_entropies.push_back({i, j, s});
      sum += s;
    }
  out.nn_entropy = entropy(rdm2(psi, 1, 2));
  out.nnn_entropy = entropy(rdm2(psi, 1, 3));
  out.e2v_all_pairs = sum / static_cast<double>(out.pair_entropies.size());

  const auto full = SpinBasis::full(n);
  const auto couplings = spec.couplings();
  const CMatrix hf = exchange_matrix(*full, couplings);
  CMatrix szf(full->size(), full->size());
  for (std::size_t k = 0; k < full->size(); ++k)
    for (int s = 1; s <= n; ++s) szf(k, k) += sz_value(full->config(k), s);
  const CMatrix s2f = s2_matrix(full);
  out.commutator_sz = operator_norm(hf * szf - szf * hf);
  out.commutator_s2 = operator_norm(hf * s2f - s2f * hf);
  return out;
}

}  // namespace vbent
