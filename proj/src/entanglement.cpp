#include "vbent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "vbent/errors.hpp"

namespace vbent {

namespace {

constexpr double kClamp = 1e-10;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void check_density_matrix(const CMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) throw InvalidDensityMatrix("density matrix must be square");
  if (rho.hermiticity_defect() > 1e-10) throw InvalidDensityMatrix("density matrix is not Hermitian");
  const cplx tr = rho.trace();
  if (std::abs(tr - 1.0) > 1e-10) throw InvalidDensityMatrix("density matrix trace " + std::to_string(tr.real()));
}

std::vector<double> clamped_spectrum(const CMatrix& rho) {
  check_density_matrix(rho);
  auto values = hermitian_eig(rho, false).values;
  for (auto& v : values) {
    if (v < -kClamp) throw InvalidDensityMatrix("negative eigenvalue " + std::to_string(v));
    v = std::max(v, 0.0);
  }
  return values;
}

void check_even_n(int n, int lo) {
  if (n % 2 != 0 || n < lo) throw InvalidSize("need even n >= " + std::to_string(lo) + ", got " + std::to_string(n));
}

bool in_domain(double c) { return c >= -0.25 - 1e-12 && c <= 1.0 / 12.0 + 1e-12; }

}  // namespace

double von_neumann_entropy(const CMatrix& rho) {
  double s = 0.0;
  for (double v : clamped_spectrum(rho)) s -= xlog2x(v);
  return std::max(s, 0.0);
}

double entropy_closed_form(double c) {
  if (!in_domain(c)) throw DomainError("<SzSz> = " + std::to_string(c) + " outside [-1/4, 1/12]");
  const double u = std::max(0.0, 1.0 + 4.0 * c);
  const double v = std::max(0.0, 1.0 - 12.0 * c);
  return 2.0 - 0.25 * (3.0 * xlog2x(u) + xlog2x(v));
}

double entropy_closed_form_derivative(double c) {
  if (!in_domain(c)) throw DomainError("<SzSz> = " + std::to_string(c) + " outside [-1/4, 1/12]");
  return -3.0 * (std::log2(1.0 + 4.0 * c) - std::log2(1.0 - 12.0 * c));
}

double purity(const CMatrix& rho) {
  double s = 0.0;
  for (std::size_t r = 0; r < rho.rows(); ++r)
    for (std::size_t c = 0; c < rho.cols(); ++c) s += std::norm(rho(r, c));
  return s;
}

double iconcurrence_closed_form(double c) {
  if (!in_domain(c)) throw DomainError("<SzSz> = " + std::to_string(c) + " outside [-1/4, 1/12]");
  return std::sqrt(std::max(0.0, 2.0 * (0.75 - 12.0 * c * c)));
}

double e2v(const PureState& psi) {
  const int n = psi.sites();
  double s = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) s += entropy(rdm2(psi, i, j));
  return s / (0.5 * n * (n - 1));
}

double e2v_max(int n) {
  check_even_n(n, 4);
  const double a = 0.25 - 1.0 / (4.0 * (n - 1));
  const double b = 0.25 + 3.0 / (4.0 * (n - 1));
  return -3.0 * xlog2x(a) - xlog2x(b);
}

double iconcurrence(const PureState& psi) {
  const int n = psi.sites();
  double s = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) s += std::sqrt(std::max(0.0, 2.0 * (1.0 - purity(rdm2(psi, i, j).m))));
  return s / (0.5 * n * (n - 1));
}

double ic_max(int n) {
  check_even_n(n, 4);
  return iconcurrence_closed_form(-1.0 / (4.0 * (n - 1)));
}

double wootters_concurrence(const CMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw InvalidDensityMatrix("concurrence needs a 4x4 matrix");
  clamped_spectrum(rho);
  CMatrix yy(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  // lambda_k are the singular values of sqrt(rho) Y conj(sqrt(rho)), avoiding a second square root.
  const Spectrum sp = hermitian_eig(rho);
  std::vector<double> root(4);
  for (std::size_t k = 0; k < 4; ++k) root[k] = sp.values[k] > 1e-14 ? std::sqrt(sp.values[k]) : 0.0;
  const CMatrix sq = sp.vectors * CMatrix::diagonal(root) * sp.vectors.adjoint();
  std::vector<double> lam = singular_values(sq * yy * sq.conj());
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::clamp(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0);
}

CMatrix werner_matrix(double p) {
  CMatrix w = CMatrix::identity(4) * ((1.0 - p) / 4.0);
  w(1, 1) += 0.5 * p;
  w(2, 2) += 0.5 * p;
  w(1, 2) -= 0.5 * p;
  w(2, 1) -= 0.5 * p;
  return w;
}

double werner_p(const PureState& psi, int i, int j, double tol) {
  const double p = -4.0 / 3.0 * sdots(psi, i, j);
  const CMatrix diff = rdm2(psi, i, j).m - werner_matrix(p);
  if (diff.max_abs() > tol)
    throw NotRotationallyInvariant("pair (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") is not of Werner form, deviation " + std::to_string(diff.max_abs()));
  return p;
}

double rvb_gas_p(int n) {
  if (n < 2) throw InvalidSize("need n >= 2");
  return 1.0 / 3.0 + 2.0 / (3.0 * n);
}

BoundComparison bound_comparison(int n) {
  if (n < 4) throw InvalidSize("bound comparison needs n >= 4, got " + std::to_string(n));
  BoundComparison b{};
  b.n = n;
  b.p_exact = 1.0 / (n - 1);
  b.p_monogamy = 1.0 / 3.0 + 2.0 / (3.0 * std::sqrt(n - 1.0));
  b.p_telecloning = 1.0 / 3.0 + 2.0 / (3.0 * (n - 1));
  b.ordered = b.p_exact <= b.p_telecloning && b.p_telecloning <= b.p_monogamy;
  return b;
}

PairMeasure measure_pair(const PureState& psi, int i, int j) {
  PairMeasure m{};
  m.i = i;
  m.j = j;
  m.szsz = szsz(psi, i, j);
  m.spsm = spsm(psi, i, j);
  m.sdots = sdots(psi, i, j);
  const TwoQubitRDM rho = rdm2(psi, i, j);
  m.entropy = entropy(rho);
  m.purity = purity(rho.m);
  m.iconc_term = std::sqrt(std::max(0.0, 2.0 * (1.0 - m.purity)));
  m.wootters = wootters_concurrence(rho);
  try {
    m.werner_p = werner_p(psi, i, j);
  } catch (const NotRotationallyInvariant&) {
    m.werner_p.reset();
  }
  return m;
}

EntanglementReport measure(const PureState& psi, std::span<const std::pair<int, int>> pairs) {
  const PureState p = psi.normalized_copy();
  EntanglementReport r;
  r.n = p.sites();
  std::vector<std::pair<int, int>> list(pairs.begin(), pairs.end());
  if (list.empty())
    for (int i = 1; i <= r.n; ++i)
      for (int j = i + 1; j <= r.n; ++j) list.emplace_back(i, j);
  double se = 0.0, si = 0.0;
  for (const auto& [i, j] : list) {
    r.pairs.push_back(measure_pair(p, i, j));
    se += r.pairs.back().entropy;
    si += r.pairs.back().iconc_term;
  }
  r.e2v = se / static_cast<double>(list.size());
  r.ic = si / static_cast<double>(list.size());
  r.e2v_max = (r.n % 2 == 0 && r.n >= 4) ? e2v_max(r.n) : 0.0;
  const auto [sp, sm] = isotropy_residuals(p);
  r.isotropic = sp <= 1e-10 && sm <= 1e-10;
  const AmplitudeProfile prof = amplitude_profile(p);
  r.homogeneous = p.basis()->is_sz0() && prof.full_support && prof.relative_spread <= 1e-9;
  return r;
}

OptimalityCheck verify_homogeneity_optimal(int n, std::size_t trials, std::uint64_t seed, Objective objective) {
  check_even_n(n, 4);
  const std::size_t m = static_cast<std::size_t>(n - 1);
  auto summand = [objective](double c) {
    return objective == Objective::Entropy ? entropy_closed_form(c) : iconcurrence_closed_form(c);
  };
  auto total = [&](const std::vector<double>& c) {
    double s = 0.0;
    for (double x : c) s += summand(x);
    return s;
  };
  auto feasible = [](const std::vector<double>& c) {
    return std::all_of(c.begin(), c.end(), [](double x) { return x >= -0.25 && x <= 1.0 / 12.0; });
  };

  const double c_star = -1.0 / (4.0 * (n - 1));
  OptimalityCheck out;
  out.uniform_value = total(std::vector<double>(m, c_star));
  out.best_sampled = -INFINITY;

  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);

  // y_j = c_j + 1/4 lies in [0, 1/3] and sums to (n-2)/4.
  const double y_sum = (n - 2) / 4.0;
  const std::size_t max_attempts = 10000 * std::max<std::size_t>(trials, 1);
  std::vector<double> c(m);
  std::size_t attempts = 0;
  while (out.samples < trials && attempts++ < max_attempts) {
    const bool global = out.samples % 2 == 0;
    if (global) {
      double s = 0.0;
      for (auto& x : c) {
        x = expo(rng);
        s += x;
      }
      for (auto& x : c) x = x / s * y_sum - 0.25;
    } else {
      const double eps = std::pow(10.0, -6.0 + 5.0 * unit(rng));
      std::fill(c.begin(), c.end(), c_star);
      if (out.samples % 4 == 1) {
        std::size_t a = pick(rng), b = pick(rng);
        while (b == a) b = pick(rng);
        c[a] += eps;
        c[b] -= eps;
      } else {
        std::vector<double> d(m);
        double mean = 0.0;
        for (auto& x : d) {
          x = gauss(rng);
          mean += x;
        }
        mean /= static_cast<double>(m);
        double len = 0.0;
        for (auto& x : d) {
          x -= mean;
          len += x * x;
        }
        len = std::sqrt(len);
        for (std::size_t k = 0; k < m; ++k) c[k] += eps * d[k] / len;
      }
    }
    if (!feasible(c)) continue;
    ++out.samples;
    out.best_sampled = std::max(out.best_sampled, total(c));
  }
  out.max_excess = out.best_sampled - out.uniform_value;
  out.passed = out.samples == trials && out.max_excess <= 1e-9;
  return out;
}

namespace {

std::vector<CurveRow> curve(int n_max, double (*f)(int), double limit) {
  if (n_max < 4 || n_max > 10000) throw InvalidSize("n-max must lie in 4..10000");
  std::vector<CurveRow> rows;
  for (int n = 4; n <= n_max; n += 2) {
    const double v = f(n);
    rows.push_back({n, v, v / limit});
  }
  return rows;
}

}  // namespace

std::vector<CurveRow> e2v_max_curve(int n_max) { return curve(n_max, e2v_max, 2.0); }
std::vector<CurveRow> ic_max_curve(int n_max) { return curve(n_max, ic_max, std::sqrt(1.5)); }

}  // namespace vbent
