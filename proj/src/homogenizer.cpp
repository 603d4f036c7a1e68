#include "vbent/homogenizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <tuple>

#include "vbent/entanglement.hpp"
#include "vbent/errors.hpp"
#include "vbent/vb_basis.hpp"

namespace vbent {

namespace {

double flip_sign(int n) { return (n / 2) % 2 == 0 ? 1.0 : -1.0; }

void require_exact_size(int n) {
  if (n != 4 && n != 6) throw Unsupported("exact routes cover n = 4 and n = 6; use torus_search for n = " + std::to_string(n));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Rows of the Rumer map belonging to the flip representatives.
CMatrix representative_rows(const CMatrix& m, int n) {
  const auto basis = sector_basis(n);
  const auto reps = flip_representatives(n);
  CMatrix out(reps.size(), m.cols());
  for (std::size_t u = 0; u < reps.size(); ++u) {
    const std::size_t row = *basis->index_of(reps[u]);
    for (std::size_t c = 0; c < m.cols(); ++c) out(u, c) = m(row, c);
  }
  return out;
}

// Samples members of every family, certifies them and keeps a linearly independent set.
template <class Build>
void collect_states(ExactRouteReport& rep, int n, std::uint64_t seed, Build build) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  OrthonormalSet span(sector_basis(n)->size());
  for (const auto& fam : rep.families) {
    std::vector<std::vector<double>> samples;
    samples.emplace_back(fam.free_phases(), std::numbers::pi / 2.0);
    if (fam.free_phases() > 0) {
      std::vector<double> r(fam.free_phases());
      for (auto& a : r) a = angle(rng);
      samples.push_back(std::move(r));
    }
    for (const auto& ph : samples) {
      ++rep.candidates;
      const PureState psi = build(fam.evaluate(ph));
      if (!verify_maximal(psi).valid()) continue;
      if (span.try_add(psi.amplitudes())) rep.states.push_back(psi.gauge_fixed());
    }
  }
}

}  // namespace

MaximalityCertificate verify_maximal(const PureState& state, const CertificateTolerances& tol) {
  const PureState psi = state.normalized_copy();
  const int n = psi.sites();
  MaximalityCertificate cert;
  cert.is_sz0 = psi.basis()->is_sz0();

  std::tie(cert.sp_residual, cert.sm_residual) = isotropy_residuals(psi);
  cert.is_isotropic = cert.sp_residual <= tol.isotropy && cert.sm_residual <= tol.isotropy;

  const auto& a = psi.amplitudes();
  double mean = 0.0, peak = 0.0;
  for (const auto& x : a) {
    mean += std::abs(x);
    peak = std::max(peak, std::abs(x));
  }
  mean /= static_cast<double>(a.size());
  double dev = 0.0;
  cert.full_support = true;
  for (const auto& x : a) {
    dev = std::max(dev, std::abs(std::abs(x) - mean));
    if (std::abs(x) <= 1e-12 * peak) cert.full_support = false;
  }
  cert.amplitude_spread = dev / mean;
  cert.is_homogeneous = cert.is_sz0 && cert.full_support && cert.amplitude_spread <= tol.homogeneity;

  if (cert.is_sz0) {
    const auto& b = *psi.basis();
    const double s = flip_sign(n);
    double worst = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k)
      worst = std::max(worst, std::abs(psi.amplitude(flip_all(b.config(k), n)) - s * a[k]));
    cert.flip_parity_residual = worst / peak;
    cert.flip_parity_ok = cert.flip_parity_residual <= tol.homogeneity;
  }

  if (n % 2 == 0 && n >= 4) {
    cert.e2v = e2v(psi);
    cert.e2v_max = e2v_max(n);
    cert.e2v_equals_max = std::abs(cert.e2v - cert.e2v_max) <= tol.e2v;
  }
  return cert;
}

std::vector<Config> flip_representatives(int n) {
  const auto basis = sector_basis(n);
  std::vector<Config> reps;
  for (Config c : basis->configs())
    if (c < flip_all(c, n)) reps.push_back(c);
  return reps;
}

PureState expand_flip_symmetric(int n, std::span<const cplx> z) {
  const auto basis = sector_basis(n);
  const auto reps = flip_representatives(n);
  if (z.size() != reps.size())
    throw InvalidState("expected " + std::to_string(reps.size()) + " representative amplitudes");
  CVector amp(basis->size());
  for (std::size_t u = 0; u < reps.size(); ++u) {
    amp[*basis->index_of(reps[u])] = z[u];
    amp[*basis->index_of(flip_all(reps[u], n))] = flip_sign(n) * z[u];
  }
  return PureState(basis, std::move(amp));
}

PhasorSystem isotropy_equations(int n) {
  if (n % 2 != 0 || n < 4 || n > 10) throw InvalidSize("isotropy equations need even n in 4..10");
  const auto reps = flip_representatives(n);
  const auto basis = sector_basis(n);
  // (unknown, sign) of every sector configuration
  std::vector<std::pair<std::size_t, int>> slot(basis->size());
  for (std::size_t u = 0; u < reps.size(); ++u) {
    slot[*basis->index_of(reps[u])] = {u, 1};
    slot[*basis->index_of(flip_all(reps[u], n))] = {u, static_cast<int>(flip_sign(n))};
  }
  PhasorSystem sys;
  sys.unknowns = reps.size();
  const auto raised = SpinBasis::sector(n, n / 2 + 1);
  for (Config t : raised->configs()) {
    PhasorEquation eq;
    for (int site = 1; site <= n; ++site) {
      if (!is_up(t, site)) continue;
      const auto [u, s] = slot[*basis->index_of(t ^ (Config{1} << (site - 1)))];
      eq.push_back({s, u});
    }
    sys.equations.push_back(std::move(eq));
  }
  return sys;
}

PhasorSystem rumer_span_equations(int n) {
  require_exact_size(n);
  const CMatrix red = representative_rows(rumer_map(n).m, n);
  const std::size_t U = red.rows(), R = red.cols();
  PhasorSystem sys;
  sys.unknowns = U;

  std::vector<std::size_t> pick;
  auto test_subset = [&] {
    const std::size_t s = pick.size();
    CMatrix cols(R, s);
    for (std::size_t k = 0; k < s; ++k)
      for (std::size_t c = 0; c < R; ++c) cols(c, k) = red(pick[k], c);
    if (matrix_rank(cols) != s - 1) return;
    // Fix the first coefficient to 1; the others follow when the set is a circuit.
    CMatrix rest(R, s - 1);
    CVector rhs(R);
    for (std::size_t c = 0; c < R; ++c) {
      rhs[c] = -cols(c, 0);
      for (std::size_t k = 1; k < s; ++k) rest(c, k - 1) = cols(c, k);
    }
    CVector y;
    try {
      y = least_squares(rest, rhs);
    } catch (const Error&) {
      return;
    }
    const CVector fit = rest * y;
    for (std::size_t c = 0; c < R; ++c)
      if (std::abs(fit[c] - rhs[c]) > 1e-9) return;
    PhasorEquation eq{{1, pick[0]}};
    for (std::size_t k = 1; k < s; ++k) {
      if (std::abs(std::abs(y[k - 1]) - 1.0) > 1e-9 || std::abs(y[k - 1].imag()) > 1e-9) return;
      eq.push_back({y[k - 1].real() > 0 ? 1 : -1, pick[k]});
    }
    sys.equations.push_back(std::move(eq));
  };
  auto rec = [&](auto&& self, std::size_t start, std::size_t size) -> void {
    if (pick.size() == size) {
      test_subset();
      return;
    }
    for (std::size_t u = start; u < U; ++u) {
      pick.push_back(u);
      self(self, u + 1, size);
      pick.pop_back();
    }
  };
  for (std::size_t size = 2; size <= 4; ++size) rec(rec, 0, size);

  if (matrix_rank(red) + independent_subsystem(sys).equations.size() != U)
    throw Error("unit circuits do not span the relations among Rumer map rows");
  return sys;
}

ExactRouteReport homogenize_isotropic_report(int n, std::uint64_t seed) {
  require_exact_size(n);
  ExactRouteReport rep;
  const RumerMap map = rumer_map(n);
  const CMatrix red = representative_rows(map.m, n);
  rep.raw = rumer_span_equations(n);
  rep.reduced = independent_subsystem(rep.raw);
  rep.families = solve_phasor_system(rep.reduced);
  collect_states(rep, n, seed, [&](const CVector& z) {
    const CVector x = least_squares(red, z);
    return PureState(sector_basis(n), map.m * x);
  });
  return rep;
}

ExactRouteReport isotropize_homogeneous_report(int n, std::uint64_t seed) {
  require_exact_size(n);
  ExactRouteReport rep;
  rep.raw = isotropy_equations(n);
  rep.reduced = independent_subsystem(rep.raw);
  rep.families = solve_phasor_system(rep.reduced);
  collect_states(rep, n, seed, [&](const CVector& z) { return expand_flip_symmetric(n, z); });
  return rep;
}

std::vector<PureState> homogenize_isotropic(int n, std::uint64_t seed) {
  return homogenize_isotropic_report(n, seed).states;
}

std::vector<PureState> isotropize_homogeneous(int n, std::uint64_t seed) {
  return isotropize_homogeneous_report(n, seed).states;
}

SpanEntropyObjective::SpanEntropyObjective(int n) : n_(n) {
  if (n % 2 != 0 || n < 4 || n > 10) throw InvalidSize("span objective needs even n in 4..10");
  const RumerMap map = rumer_map(n);
  OrthonormalSet span(map.m.rows());
  for (std::size_t c = 0; c < map.m.cols(); ++c) span.try_add(map.m.column(c));
  q_ = CMatrix::from_columns(span.vectors());
  const auto basis = sector_basis(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      std::vector<double> row(basis->size());
      for (std::size_t k = 0; k < basis->size(); ++k)
        row[k] = sz_value(basis->config(k), i) * sz_value(basis->config(k), j);
      sigma_.push_back(std::move(row));
    }
}

CVector SpanEntropyObjective::amplitudes(std::span<const double> x) const {
  if (x.size() != dimension()) throw InvalidState("parameter vector has the wrong length");
  CVector coef(q_.cols());
  for (std::size_t k = 0; k < coef.size(); ++k) coef[k] = {x[2 * k], x[2 * k + 1]};
  return q_ * coef;
}

std::vector<double> SpanEntropyObjective::pair_correlations(const CVector& psi) const {
  double total = 0.0;
  for (const auto& a : psi) total += std::norm(a);
  std::vector<double> c(sigma_.size());
  for (std::size_t p = 0; p < sigma_.size(); ++p) {
    double s = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k) s += std::norm(psi[k]) * sigma_[p][k];
    c[p] = std::clamp(s / total, -0.25, 1.0 / 12.0);
  }
  return c;
}

double SpanEntropyObjective::value(std::span<const double> x) const {
  double s = 0.0;
  for (double c : pair_correlations(amplitudes(x))) s += entropy_closed_form(c);
  return s / static_cast<double>(sigma_.size());
}

std::vector<double> SpanEntropyObjective::gradient(std::span<const double> x) const {
  const CVector psi = amplitudes(x);
  const auto c = pair_correlations(psi);
  double total = 0.0;
  for (const auto& a : psi) total += std::norm(a);

  // g_k = d value / d p_k with p_k = |psi_k|^2 / total.
  std::vector<double> g(psi.size(), 0.0);
  for (std::size_t p = 0; p < sigma_.size(); ++p) {
    const double u = std::max(1.0 + 4.0 * c[p], 1e-300), v = std::max(1.0 - 12.0 * c[p], 1e-300);
    const double d = -3.0 * (std::log2(u) - std::log2(v)) / static_cast<double>(sigma_.size());
    for (std::size_t k = 0; k < psi.size(); ++k) g[k] += d * sigma_[p][k];
  }
  double g_mean = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) g_mean += g[k] * std::norm(psi[k]) / total;

  CVector h(psi.size());
  for (std::size_t k = 0; k < psi.size(); ++k) h[k] = (g[k] - g_mean) * psi[k] / total;
  const CVector w = q_.adjoint() * h;
  std::vector<double> grad(dimension());
  for (std::size_t k = 0; k < w.size(); ++k) {
    grad[2 * k] = 2.0 * w[k].real();
    grad[2 * k + 1] = 2.0 * w[k].imag();
  }
  return grad;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void normalize(std::vector<double>& x) {
  const double len = std::sqrt(dot(x, x));
  for (auto& v : x) v /= len;
}

// Projected gradient ascent on the unit sphere; returns the final value.
double ascend(const SpanEntropyObjective& obj, std::vector<double>& x, double target) {
  normalize(x);
  double f = obj.value(x);
  std::vector<double> g = obj.gradient(x);
  double step = 1.0;
  for (int it = 0; it < 5000; ++it) {
    const double gg = dot(g, g);
    if (f >= target - 1e-14 || gg < 1e-26) break;
    std::vector<double> xn(x.size());
    double fn = f;
    bool accepted = false;
    for (int half = 0; half < 60; ++half) {
      for (std::size_t k = 0; k < x.size(); ++k) xn[k] = x[k] + step * g[k];
      normalize(xn);
      fn = obj.value(xn);
      if (fn >= f + 1e-4 * step * gg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const std::vector<double> gn = obj.gradient(xn);
    // Barzilai-Borwein length for the next step.
    std::vector<double> s(x.size()), y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      s[k] = xn[k] - x[k];
      y[k] = gn[k] - g[k];
    }
    const double sy = dot(s, y);
    step = std::abs(sy) > 1e-300 ? std::clamp(std::abs(dot(s, s) / sy), 1e-6, 1e3) : 1.0;
    x = std::move(xn);
    g = gn;
    f = fn;
  }
  return f;
}

// Levenberg-Marquardt on the phases theta of u_k = exp(i theta_k)/sqrt(d),
// minimizing |(1-P) u|^2. Returns u and the final residual norm.
std::pair<CVector, double> polish_phases(const CMatrix& q, const CMatrix& proj, const CVector& start) {
  const std::size_t d = start.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<double> theta(d);
  for (std::size_t k = 0; k < d; ++k) theta[k] = std::arg(start[k]);

  auto make_u = [&](const std::vector<double>& th) {
    CVector u(d);
    for (std::size_t k = 0; k < d; ++k) u[k] = std::polar(scale, th[k]);
    return u;
  };
  auto residual = [&](const CVector& u) {
    const CVector pu = q * (q.adjoint() * u);
    CVector r(d);
    for (std::size_t k = 0; k < d; ++k) r[k] = u[k] - pu[k];
    return r;
  };

  CVector u = make_u(theta);
  CVector r = residual(u);
  double cost = norm(r);
  double lambda = 1e-3;
  for (int it = 0; it < 300 && cost > 1e-15 && lambda < 1e12; ++it) {
    // J^T J = Re(diag(conj u)(1-P) diag(u)), J^T r = Im(conj(u) * r)
    std::vector<double> a(d * d), b(d);
    for (std::size_t k = 0; k < d; ++k) {
      b[k] = -(std::conj(u[k]) * r[k]).imag();
      for (std::size_t l = 0; l < d; ++l) {
        const cplx pkl = (k == l ? 1.0 : 0.0) - proj(k, l);
        a[k * d + l] = (std::conj(u[k]) * pkl * u[l]).real();
      }
    }
    for (std::size_t k = 0; k < d; ++k) a[k * d + k] += lambda * scale * scale;
    if (!cholesky_solve(a, b, d)) {
      lambda *= 4.0;
      continue;
    }
    std::vector<double> trial = theta;
    for (std::size_t k = 0; k < d; ++k) trial[k] += b[k];
    const CVector ut = make_u(trial);
    const CVector rt = residual(ut);
    const double ct = norm(rt);
    if (ct < cost) {
      theta = std::move(trial);
      u = ut;
      r = rt;
      cost = ct;
      lambda = std::max(lambda / 3.0, 1e-12);
    } else {
      lambda *= 4.0;
    }
  }
  return {u, cost};
}

}  // namespace

TorusResult torus_search(int n, std::uint64_t seed, std::size_t restarts) {
  if (n % 2 != 0 || n < 4 || n > 10) throw InvalidSize("torus search needs even n in 4..10, got " + std::to_string(n));
  const SpanEntropyObjective obj(n);
  const CMatrix& q = obj.span_basis();
  const CMatrix proj = q * q.adjoint();
  const double target = e2v_max(n);
  const auto basis = sector_basis(n);

  TorusResult result;
  result.best_e2v = -INFINITY;
  result.best_torus_residual = INFINITY;
  OrthonormalSet span(basis->size());

  for (std::size_t r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(r)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(obj.dimension());
    for (auto& v : x) v = gauss(rng);

    if (r == 0) {
      std::vector<double> xs = x;
      normalize(xs);
      const auto g = obj.gradient(xs);
      double worst = 0.0;
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const double h = 1e-6;
        std::vector<double> xp = xs, xm = xs;
        xp[k] += h;
        xm[k] -= h;
        worst = std::max(worst, std::abs((obj.value(xp) - obj.value(xm)) / (2 * h) - g[k]));
      }
      result.gradient_check_error = worst;
    }

    TorusRun run;
    run.e2v = ascend(obj, x, target);
    result.best_e2v = std::max(result.best_e2v, run.e2v);
    run.reached_max = run.e2v >= target - 1e-7;
    const CVector psi = obj.amplitudes(x);
    run.spread = amplitude_profile(PureState(basis, psi)).relative_spread;
    if (run.reached_max) {
      ++result.reached_max;
      const auto [u, res] = polish_phases(q, proj, psi);
      run.torus_residual = res;
      result.best_torus_residual = std::min(result.best_torus_residual, res);
      const PureState candidate(basis, q * (q.adjoint() * u));
      if (verify_maximal(candidate).valid()) {
        run.certified = true;
        ++result.certified_runs;
        if (span.try_add(candidate.amplitudes())) result.states.push_back(candidate.gauge_fixed());
      }
    }
    result.runs.push_back(run);
  }
  return result;
}

}  // namespace vbent
