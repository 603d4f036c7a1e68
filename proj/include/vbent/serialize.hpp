#pragma once

// JSON forms of states, matchings, reports and certificates.
//
// State: {"n", "sector": "sz0", "normalized", "amplitudes": [{"bits", "re", "im"}]}
// with site 1 leftmost in "bits"; configurations left out have amplitude 0.

#include <json.hpp>

#include "vbent/entanglement.hpp"
#include "vbent/homogenizer.hpp"
#include "vbent/models.hpp"
#include "vbent/spin.hpp"
#include "vbent/vb_basis.hpp"

namespace vbent {

using nlohmann::json;

json state_to_json(const PureState& psi);
/// Throws ParseError on schema violations.
PureState state_from_json(const json& j);

json matching_to_json(const Matching& m);
Matching matching_from_json(const json& j);

json rumer_map_to_json(const RumerMap& map);

json pair_to_json(const PairMeasure& p);
json report_to_json(const EntanglementReport& r);
json certificate_to_json(const MaximalityCertificate& c);
json spectrum_to_json(const SpectrumReport& s);
json baseline_to_json(const RingBaseline& b);
json torus_summary_to_json(const TorusResult& t);

/// Reads and parses a JSON file; ParseError on IO or syntax problems.
json read_json_file(const std::string& path);

}  // namespace vbent
