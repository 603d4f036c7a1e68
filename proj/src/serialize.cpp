#include "vbent/serialize.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <set>

#include "vbent/errors.hpp"

namespace vbent {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw ParseError(std::string("field \"") + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(std::string("field \"") + key + "\" is not finite");
  return x;
}

int integer(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

json state_to_json(const PureState& psi) {
  const auto& b = *psi.basis();
  if (!b.is_sz0()) throw InvalidState("only Sz=0 sector states have a JSON form");
  double peak = 0.0;
  for (const auto& a : psi.amplitudes()) peak = std::max(peak, std::abs(a));
  json amps = json::array();
  for (std::size_t k = 0; k < b.size(); ++k) {
    const cplx a = psi.amplitudes()[k];
    if (std::abs(a) <= 1e-14 * peak) continue;
    amps.push_back({{"bits", config_to_bits(b.config(k), b.sites())}, {"re", a.real()}, {"im", a.imag()}});
  }
  return json{{"n", b.sites()}, {"sector", "sz0"}, {"normalized", psi.normalized()}, {"amplitudes", amps}};
}

PureState state_from_json(const json& j) {
  const int n = integer(j, "n");
  if (n % 2 != 0 || n < 2 || n > kMaxSites) throw ParseError("\"n\" must be even in 2..12");
  const json& sector = field(j, "sector");
  if (!sector.is_string() || sector.get<std::string>() != "sz0") throw ParseError("\"sector\" must be \"sz0\"");
  bool normalized = true;
  if (j.contains("normalized")) {
    if (!j.at("normalized").is_boolean()) throw ParseError("\"normalized\" must be a boolean");
    normalized = j.at("normalized").get<bool>();
  }
  const json& amps = field(j, "amplitudes");
  if (!amps.is_array()) throw ParseError("\"amplitudes\" must be an array");

  const auto basis = sector_basis(n);
  CVector amp(basis->size());
  std::set<Config> seen;
  for (const auto& entry : amps) {
    const json& bits = field(entry, "bits");
    if (!bits.is_string() || bits.get<std::string>().size() != static_cast<std::size_t>(n))
      throw ParseError("\"bits\" must be a string of " + std::to_string(n) + " spins");
    Config c;
    try {
      c = bits_to_config(bits.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad configuration: ") + e.what());
    }
    const auto idx = basis->index_of(c);
    if (!idx) throw ParseError("configuration " + bits.get<std::string>() + " is outside the Sz=0 sector");
    if (!seen.insert(c).second) throw ParseError("configuration " + bits.get<std::string>() + " listed twice");
    amp[*idx] = {number(entry, "re"), entry.contains("im") ? number(entry, "im") : 0.0};
  }
  try {
    return PureState(basis, std::move(amp), normalized ? Normalization::Normalize : Normalization::Keep);
  } catch (const InvalidState& e) {
    throw ParseError(e.what());
  }
}

json matching_to_json(const Matching& m) {
  json pairs = json::array();
  for (const auto& [i, j] : m.pairs()) pairs.push_back({i, j});
  return json{{"n", m.sites()}, {"pairs", pairs}};
}

Matching matching_from_json(const json& j) {
  const int n = integer(j, "n");
  const json& pairs = field(j, "pairs");
  if (!pairs.is_array()) throw ParseError("\"pairs\" must be an array");
  std::vector<std::pair<int, int>> out;
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw ParseError("each pair must be [i, j]");
    out.emplace_back(p[0].get<int>(), p[1].get<int>());
  }
  try {
    return Matching(n, std::move(out));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid matching: ") + e.what());
  }
}

json rumer_map_to_json(const RumerMap& map) {
  json matchings = json::array();
  for (const auto& m : map.matchings) matchings.push_back(matching_to_json(m)["pairs"]);
  const auto basis = sector_basis(map.n);
  json rows = json::array();
  for (Config c : basis->configs()) rows.push_back(config_to_bits(c, map.n));
  json re = json::array();
  for (std::size_t r = 0; r < map.m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < map.m.cols(); ++c) row.push_back(map.m(r, c).real());
    re.push_back(row);
  }
  return json{{"n", map.n}, {"rank", map.rank}, {"matchings", matchings}, {"rows", rows}, {"matrix", re}};
}

json pair_to_json(const PairMeasure& p) {
  json j{{"i", p.i},
         {"j", p.j},
         {"szsz", p.szsz},
         {"spsm", complex_json(p.spsm)},
         {"sdots", p.sdots},
         {"entropy", p.entropy},
         {"purity", p.purity},
         {"iconc_term", p.iconc_term},
         {"wootters", p.wootters}};
  j["werner_p"] = p.werner_p ? json(*p.werner_p) : json(nullptr);
  if (p.werner_p) j["separable"] = *p.werner_p <= 1.0 / 3.0;
  return j;
}

json report_to_json(const EntanglementReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) pairs.push_back(pair_to_json(p));
  return json{{"n", r.n},       {"e2v", r.e2v},           {"e2v_max", r.e2v_max},
              {"ic", r.ic},     {"homogeneous", r.homogeneous}, {"isotropic", r.isotropic},
              {"pairs", pairs}};
}

json certificate_to_json(const MaximalityCertificate& c) {
  return json{{"flags",
               {{"is_sz0", c.is_sz0},
                {"is_isotropic", c.is_isotropic},
                {"is_homogeneous", c.is_homogeneous},
                {"flip_parity_ok", c.flip_parity_ok},
                {"e2v_equals_max", c.e2v_equals_max}}},
              {"residuals",
               {{"s_plus", c.sp_residual},
                {"s_minus", c.sm_residual},
                {"amplitude_spread", c.amplitude_spread},
                {"full_support", c.full_support},
                {"flip_parity", c.flip_parity_residual}}},
              {"e2v", c.e2v},
              {"e2v_max", c.e2v_max},
              {"valid", c.valid()}};
}

json spectrum_to_json(const SpectrumReport& s) {
  json levels = json::array();
  for (const auto& l : s.levels)
    levels.push_back({{"energy", l.energy}, {"multiplicity", l.multiplicity}, {"s_t", l.s_total}});
  json j{{"model", model_name(s.spec.model)},
         {"n", s.spec.n},
         {"j_star", s.spec.j_star},
         {"levels", levels},
         {"ground_energy", s.ground_energy},
         {"ground_degeneracy", s.ground_degeneracy}};
  if (s.spec.model == Model::Iirhm) {
    j["analytic_match"] = s.analytic_ok;
    j["analytic_deviation"] = s.analytic_deviation;
  }
  return j;
}

json baseline_to_json(const RingBaseline& b) {
  json pairs = json::array();
  for (const auto& p : b.pair_entropies) pairs.push_back({{"i", p.i}, {"j", p.j}, {"entropy", p.entropy}});
  return json{{"ground_energy", b.ground_energy}, {"szsz_nn", b.szsz_nn},
              {"szsz_nnn", b.szsz_nnn},           {"nn_entropy", b.nn_entropy},
              {"nnn_entropy", b.nnn_entropy},     {"e2v_all_pairs", b.e2v_all_pairs},
              {"pair_entropies", pairs},          {"commutator_sz", b.commutator_sz},
              {"commutator_s2", b.commutator_s2}, {"ground_state", state_to_json(b.ground_state)}};
}

json torus_summary_to_json(const TorusResult& t) {
  return json{{"restarts", t.runs.size()},
              {"reached_max", t.reached_max},
              {"certified_runs", t.certified_runs},
              {"independent_states", t.states.size()},
              {"best_e2v", t.best_e2v},
              {"best_torus_residual", std::isfinite(t.best_torus_residual) ? json(t.best_torus_residual) : json(nullptr)},
              {"gradient_check_error", t.gradient_check_error}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace vbent
