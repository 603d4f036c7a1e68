#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vbent/entanglement.hpp"
#include "vbent/errors.hpp"
#include "vbent/homogenizer.hpp"
#include "vbent/models.hpp"
#include "vbent/named_states.hpp"
#include "vbent/serialize.hpp"
#include "vbent/vb_basis.hpp"

namespace vbent::cli {

namespace {

struct RunConfig {
  std::string format;  // empty: the subcommand's default
  std::optional<double> tolerance;

  CertificateTolerances tolerances() const {
    CertificateTolerances t;
    if (tolerance) t.isotropy = t.homogeneity = t.e2v = *tolerance;
    return t;
  }
  std::string format_or(const char* fallback) const { return format.empty() ? fallback : format; }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write " + path.string());
  f << text;
  if (!f) throw ParseError("write failed for " + path.string());
}

// (bits, |a|, arg(a)/pi) rows for the nonzero amplitudes.
void print_amplitudes(std::ostream& out, const PureState& psi) {
  const auto& b = *psi.basis();
  double peak = 0.0;
  for (const auto& a : psi.amplitudes()) peak = std::max(peak, std::abs(a));
  for (std::size_t k = 0; k < b.size(); ++k) {
    const cplx a = psi.amplitudes()[k];
    if (std::abs(a) <= 1e-14 * peak) continue;
    double phase = std::arg(a) / std::numbers::pi;
    if (phase <= -1.0 + 1e-12) phase += 2.0;
    if (std::abs(phase) < 5e-13) phase = 0.0;
    out << config_to_bits(b.config(k), b.sites()) << "  " << fixed(std::abs(a), 9) << "  " << fixed(phase, 6)
        << '\n';
  }
}

std::size_t nonzero_count(const PureState& psi) {
  double peak = 0.0;
  for (const auto& a : psi.amplitudes()) peak = std::max(peak, std::abs(a));
  std::size_t k = 0;
  for (const auto& a : psi.amplitudes()) k += std::abs(a) > 1e-14 * peak;
  return k;
}

std::string matching_text(const Matching& m) {
  std::string s;
  for (const auto& [i, j] : m.pairs()) s += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  return s;
}

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  throw UsageError("format '" + f + "' is not available for this subcommand");
}

// ---- rumer

int cmd_rumer(const RunConfig& cfg, int n, bool count_only, std::ostream& out) {
  const auto ms = enumerate_rumer(n);
  const std::string f = cfg.format_or("json");
  require_format(f, {"json", "pretty", "csv"});
  if (count_only) {
    if (f == "json")
      write_json(out, {{"n", n}, {"count", ms.size()}});
    else
      out << ms.size() << '\n';
    return kOk;
  }
  if (f == "json") {
    json list = json::array();
    for (const auto& m : ms) list.push_back(matching_to_json(m)["pairs"]);
    write_json(out, {{"n", n}, {"count", ms.size()}, {"matchings", list}});
  } else if (f == "csv") {
    out << "index,bonds\n";
    for (std::size_t k = 0; k < ms.size(); ++k) out << k << ',' << matching_text(ms[k]) << '\n';
  } else {
    out << ms.size() << " non-crossing matchings of " << n << " sites\n";
    for (const auto& m : ms) out << "  " << matching_text(m) << '\n';
  }
  return kOk;
}

// ---- state

void emit_state(const RunConfig& cfg, const PureState& psi, const std::string& label, std::ostream& out) {
  const std::string f = cfg.format_or("json");
  require_format(f, {"json", "pretty", "csv"});
  if (f == "json") {
    json j = state_to_json(psi);
    j["label"] = label;
    write_json(out, j);
  } else if (f == "csv") {
    out << "bits,re,im\n";
    const auto& b = *psi.basis();
    for (std::size_t k = 0; k < b.size(); ++k) {
      const cplx a = psi.amplitudes()[k];
      if (a == cplx{}) continue;
      out << config_to_bits(b.config(k), b.sites()) << ',' << num(a.real(), 17) << ',' << num(a.imag(), 17) << '\n';
    }
  } else {
    out << label << ": n = " << psi.sites() << ", " << nonzero_count(psi) << " nonzero amplitudes\n";
    out << "bits  |a|  phase/pi\n";
    print_amplitudes(out, psi);
  }
}

int cmd_state(const RunConfig& cfg, std::optional<int> n, const std::string& family, const std::string& matching_file,
              std::ostream& out) {
  if (family.empty() == matching_file.empty()) throw UsageError("give exactly one of --family or --matching");
  if (!family.empty()) {
    const int sites = named_family_sites(family);
    if (n && *n != sites)
      throw UsageError("family " + family + " has " + std::to_string(sites) + " sites, not " + std::to_string(*n));
    emit_state(cfg, named_state(family).gauge_fixed(), family, out);
    return kOk;
  }
  const Matching m = matching_from_json(read_json_file(matching_file));
  if (n && *n != m.sites())
    throw UsageError("matching covers " + std::to_string(m.sites()) + " sites, not " + std::to_string(*n));
  emit_state(cfg, vb_state(m).gauge_fixed(), matching_text(m), out);
  return kOk;
}

// ---- measure

std::vector<std::pair<int, int>> parse_pairs(const std::string& spec, int n) {
  if (spec == "all") return {};
  std::vector<std::pair<int, int>> pairs;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    int i = 0, j = 0;
    char comma = 0;
    std::istringstream is(item);
    if (!(is >> i >> comma >> j) || comma != ',' || !(is >> std::ws).eof())
      throw UsageError("--pairs expects 'all' or i,j[;k,l...], got '" + spec + "'");
    if (i < 1 || j < 1 || i > n || j > n || i == j)
      throw UsageError("pair (" + item + ") is not a pair of distinct sites in 1.." + std::to_string(n));
    pairs.emplace_back(i, j);
  }
  if (pairs.empty()) throw UsageError("--pairs is empty");
  return pairs;
}

int cmd_measure(const RunConfig& cfg, const std::string& state_file, const std::string& pair_spec, std::ostream& out) {
  const PureState psi = state_from_json(read_json_file(state_file));
  if (psi.sites() < 4) throw UsageError("measure needs at least four sites");
  const auto pairs = parse_pairs(pair_spec, psi.sites());
  const EntanglementReport rep = measure(psi, pairs);
  const MaximalityCertificate cert = verify_maximal(psi, cfg.tolerances());
  const std::string f = cfg.format_or("json");
  require_format(f, {"json", "pretty", "csv"});
  if (f == "json") {
    json j = report_to_json(rep);
    j["certificate"] = certificate_to_json(cert);
    write_json(out, j);
  } else if (f == "csv") {
    out << "i,j,szsz,sdots,entropy,purity,wootters,werner_p\n";
    for (const auto& p : rep.pairs)
      out << p.i << ',' << p.j << ',' << num(p.szsz, 15) << ',' << num(p.sdots, 15) << ',' << num(p.entropy, 15)
          << ',' << num(p.purity, 15) << ',' << num(p.wootters, 15) << ','
          << (p.werner_p ? num(*p.werner_p, 15) : std::string()) << '\n';
  } else {
    out << "n = " << rep.n << "  e2v = " << fixed(rep.e2v) << "  e2v_max = " << fixed(rep.e2v_max)
        << "  ic = " << fixed(rep.ic) << '\n';
    out << "homogeneous " << (rep.homogeneous ? "yes" : "no") << ", isotropic " << (rep.isotropic ? "yes" : "no")
        << ", certified maximal " << (cert.valid() ? "yes" : "no") << '\n';
    out << "pair   <SzSz>      S          wootters   werner p\n";
    for (const auto& p : rep.pairs)
      out << p.i << ',' << p.j << "   " << fixed(p.szsz) << "  " << fixed(p.entropy) << "  " << fixed(p.wootters)
          << "  " << (p.werner_p ? fixed(*p.werner_p) : std::string("-")) << '\n';
  }
  return kOk;
}

// ---- solve

std::size_t rank_of(const std::vector<PureState>& states) {
  if (states.empty()) return 0;
  std::vector<CVector> cols;
  for (const auto& s : states) cols.push_back(s.amplitudes());
  return matrix_rank(CMatrix::from_columns(cols));
}

int cmd_solve(const RunConfig& cfg, int n, const std::string& method, std::uint64_t seed, std::size_t restarts,
              const std::string& out_dir, std::ostream& out, std::ostream& err) {
  std::vector<PureState> states;
  json summary{{"n", n}, {"method", method}, {"seed", seed}};
  if (method == "exact") {
    const auto a = homogenize_isotropic_report(n, seed);
    const auto b = isotropize_homogeneous_report(n, seed);
    states = a.states;
    std::vector<PureState> both = a.states;
    both.insert(both.end(), b.states.begin(), b.states.end());
    summary["homogenize_isotropic"] = {{"equations", a.reduced.equations.size()},
                                       {"families", a.families.size()},
                                       {"states", a.states.size()}};
    summary["isotropize_homogeneous"] = {{"equations", b.reduced.equations.size()},
                                         {"families", b.families.size()},
                                         {"states", b.states.size()}};
    summary["joint_rank"] = rank_of(both);
  } else {
    const TorusResult t = torus_search(n, seed, restarts);
    states = t.states;
    summary["torus"] = torus_summary_to_json(t);
  }
  summary["count"] = states.size();
  summary["rank"] = rank_of(states);
  summary["e2v_max"] = e2v_max(n);

  json list = json::array();
  bool all_valid = true;
  for (const auto& s : states) {
    const auto cert = verify_maximal(s, cfg.tolerances());
    all_valid = all_valid && cert.valid();
    list.push_back({{"certificate", certificate_to_json(cert)}, {"state", state_to_json(s)}});
  }

  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw ParseError("cannot create " + out_dir + ": " + ec.message());
    for (std::size_t k = 0; k < list.size(); ++k) {
      char name[32];
      std::snprintf(name, sizeof name, "state_%02zu.json", k + 1);
      write_file(std::filesystem::path(out_dir) / name, list[k].dump(2) + "\n");
    }
    write_file(std::filesystem::path(out_dir) / "summary.json", summary.dump(2) + "\n");
  }

  const std::string f = cfg.format_or("json");
  require_format(f, {"json", "pretty", "csv"});
  if (f == "json") {
    json j = summary;
    if (out_dir.empty()) j["states"] = list;
    write_json(out, j);
  } else if (f == "csv") {
    out << "index,e2v,s_plus,amplitude_spread,valid\n";
    for (std::size_t k = 0; k < list.size(); ++k) {
      const json& c = list[k]["certificate"];
      out << k + 1 << ',' << num(c["e2v"].get<double>(), 15) << ','
          << num(c["residuals"]["s_plus"].get<double>(), 3) << ','
          << num(c["residuals"]["amplitude_spread"].get<double>(), 3) << ','
          << (c["valid"].get<bool>() ? "true" : "false") << '\n';
    }
  } else {
    out << "n = " << n << ", method " << method << ": " << states.size() << " certified states, rank "
        << summary["rank"].get<std::size_t>() << ", e2v_max = " << fixed(e2v_max(n)) << '\n';
    for (std::size_t k = 0; k < states.size(); ++k) {
      out << "state " << k + 1 << "\nbits  |a|  phase/pi\n";
      print_amplitudes(out, states[k]);
    }
  }

  if (states.empty()) {
    err << "no certified state found\n";
    return kSearchFailed;
  }
  if (!all_valid) {
    err << "a solver state fails certification at the requested tolerance\n";
    return kInvariant;
  }
  return kOk;
}

// ---- spectrum

int cmd_spectrum(const RunConfig& cfg, const std::string& model, int n, double j_star, std::ostream& out,
                 std::ostream& err) {
  HamiltonianSpec spec{n, parse_model(model), j_star};
  const SpectrumReport rep = spectrum(spec);
  const std::string f = cfg.format_or("json");
  require_format(f, {"json", "pretty", "csv"});
  if (f == "json") {
    write_json(out, spectrum_to_json(rep));
  } else if (f == "csv") {
    out << "energy,multiplicity,s_t\n";
    for (const auto& l : rep.levels) out << num(l.energy, 15) << ',' << l.multiplicity << ',' << l.s_total << '\n';
  } else {
    out << model << ", n = " << n << ", J* = " << num(j_star) << '\n';
    out << "E  multiplicity  S\n";
    for (const auto& l : rep.levels) out << fixed(l.energy, 9) << "  " << l.multiplicity << "  " << l.s_total << '\n';
    out << "ground energy " << fixed(rep.ground_energy, 9) << ", degeneracy " << rep.ground_degeneracy << '\n';
  }
  if (spec.model == Model::Iirhm && !rep.analytic_ok) {
    err << "spectrum deviates from the closed form by " << num(rep.analytic_deviation, 3) << '\n';
    return kInvariant;
  }
  return kOk;
}

// ---- curve

int cmd_curve(const RunConfig& cfg, const std::string& what, int n_max, const std::string& out_file,
              std::ostream& out) {
  if (n_max % 2 != 0) throw UsageError("--n-max must be even");
  const auto rows = what == "e2vmax" ? e2v_max_curve(n_max) : ic_max_curve(n_max);
  std::ostringstream csv;
  csv << "n,value,ratio\n";
  for (const auto& r : rows) csv << r.n << ',' << num(r.value, 15) << ',' << num(r.ratio, 15) << '\n';
  if (!out_file.empty()) {
    write_file(out_file, csv.str());
    return kOk;
  }
  const std::string f = cfg.format_or("csv");
  require_format(f, {"json", "pretty", "csv"});
  if (f == "csv") {
    out << csv.str();
  } else if (f == "json") {
    json list = json::array();
    for (const auto& r : rows) list.push_back({{"n", r.n}, {"value", r.value}, {"ratio", r.ratio}});
    write_json(out, {{"what", what}, {"rows", list}});
  } else {
    for (const auto& r : rows) out << r.n << "  " << fixed(r.value) << "  " << fixed(r.ratio) << '\n';
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximally pair-entangled singlet states of spin-1/2 rings", "vbent"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "pretty", "csv"}));
  app.add_option("--tolerance", cfg.tolerance, "Certificate threshold for isotropy, homogeneity and e2v")
      ->check(CLI::PositiveNumber);

  int n = 0;
  std::optional<int> n_opt;

  auto* rumer = app.add_subcommand("rumer", "List non-crossing singlet coverings");
  bool count_only = false;
  rumer->add_option("--n", n, "Number of sites")->required();
  rumer->add_flag("--count-only", count_only, "Print only the number of coverings");

  auto* state = app.add_subcommand("state", "Emit a named maximal state or a singlet product");
  std::string family, matching_file;
  state->add_option("--n", n_opt, "Number of sites");
  state->add_option("--family", family, "Named state")->check(CLI::IsMember(named_families()));
  state->add_option("--matching", matching_file, "JSON file {\"n\", \"pairs\": [[i, j], ...]}");

  auto* meas = app.add_subcommand("measure", "Pair entanglement of a state file");
  std::string state_file, pair_spec = "all";
  meas->add_option("--state", state_file, "State JSON file")->required();
  meas->add_option("--pairs", pair_spec, "'all' or i,j[;k,l...]");

  auto* solve = app.add_subcommand("solve", "Construct certified maximal states");
  std::string method = "exact", out_dir;
  std::uint64_t seed = 1;
  std::size_t restarts = 100;
  solve->add_option("--n", n, "Number of sites")->required();
  solve->add_option("--method", method, "exact (n = 4, 6) or torus")->check(CLI::IsMember({"exact", "torus"}));
  solve->add_option("--seed", seed, "Random seed");
  solve->add_option("--restarts", restarts, "Torus search restarts")->check(CLI::PositiveNumber);
  solve->add_option("--out-dir", out_dir, "Write state_NN.json files and summary.json here");

  auto* spec = app.add_subcommand("spectrum", "Exact spectrum in the Sz=0 sector");
  std::string model = "iirhm";
  double j_star = 1.0;
  spec->add_option("--model", model, "iirhm, ring or chain")->check(CLI::IsMember({"iirhm", "ring", "chain"}));
  spec->add_option("--n", n, "Number of sites")->required();
  spec->add_option("--jstar", j_star, "Coupling scale J*");

  auto* curve = app.add_subcommand("curve", "Maximal entanglement against n");
  std::string what = "e2vmax", out_file;
  int n_max = 100;
  curve->add_option("--what", what, "e2vmax or iconc")->check(CLI::IsMember({"e2vmax", "iconc"}));
  curve->add_option("--n-max", n_max, "Largest even n");
  curve->add_option("--out", out_file, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*rumer) return cmd_rumer(cfg, n, count_only, out);
    if (*state) return cmd_state(cfg, n_opt, family, matching_file, out);
    if (*meas) return cmd_measure(cfg, state_file, pair_spec, out);
    if (*solve) return cmd_solve(cfg, n, method, seed, restarts, out_dir, out, err);
    if (*spec) return cmd_spectrum(cfg, model, n, j_star, out, err);
    if (*curve) return cmd_curve(cfg, what, n_max, out_file, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const NoSolution& e) {
    err << "error: " << e.what() << '\n';
    return kSearchFailed;
  } catch (const InvalidSize& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidPair& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidState& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariant;
  }
  return kUsage;
}

}  // namespace vbent::cli
