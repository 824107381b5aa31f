#pragma once

#include <json.hpp>

#include "tslab/tstructure.hpp"

namespace tslab {

using nlohmann::json;

json to_json(const CyclicRing& r);
json to_json(const SpecSubset& s);
json to_json(const Ideal& i);
json to_json(const FinModule& m);
json to_json(const ModuleMap& f);
json to_json(const Complex& x);
json to_json(const GradedModule& g);
json to_json(const Cutoff& c);
json to_json(const ThomasonFiltration& f);

CyclicRing ring_from_json(const json& j);
SpecSubset subset_from_json(const CyclicRing& r, const json& j);
Ideal ideal_from_json(const CyclicRing& r, const json& j);
FinModule module_from_json(const CyclicRing& r, const json& j);
ModuleMap map_from_json(const CyclicRing& r, const json& j);
Complex complex_from_json(const CyclicRing& r, const json& j);
Cutoff cutoff_from_json(const json& j);
ThomasonFiltration filtration_from_json(const CyclicRing& r, const json& j);

// Sugar: `stalk(d,[n])` (cyclic stalk placed in degree n), `koszul(x,...)[k]`,
// `K(d)[k]`, or a full JSON literal.
Complex parse_complex_text(const CyclicRing& r, const std::string& text);
// `[K(2)[-1], K(3)[0]]` — brackets around comma-separated sugar/JSON items.
std::vector<Complex> parse_complex_list(const CyclicRing& r, const std::string& text);

}  // namespace tslab
