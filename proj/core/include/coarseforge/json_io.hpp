#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "coarseforge/coning.hpp"
#include "coarseforge/deelect.hpp"
#include "coarseforge/factor_systems.hpp"
#include "coarseforge/generators.hpp"
#include "coarseforge/group_closure.hpp"
#include "coarseforge/hhs_verifier.hpp"

namespace coarseforge {

using json = nlohmann::json;

inline constexpr int kAxiomSchemaVersion = 1;

json to_json(const Violation& v);
json to_json(const std::vector<Violation>& vs);
json to_json(const MetricGraph& g);
json to_json(const CayleyBall& b);
json to_json(const HypReport& h);
json to_json(const VPath& p);
json to_json(const QGMeasure& q);
json to_json(const GoodQuasiGeodesic& r);
json to_json(const FactorFamily& f);
json to_json(const EquivClasses& ec);
json to_json(const Promotion& p);
json to_json(const CosetFamily& f);
json to_json(const ClosureTrace& t);
json to_json(const AxiomReport& r);
json to_json(const PigeonholeReport& r);
json to_json(const NineteenReport& r);

/// {"n", "edges": [[u,v],...], "subspaces": {name: [...]}}. Throws StructuralError on bad input.
MetricGraph graph_from_json(const json& j);
/// {"generators": [...], "rules": [[lhs, rhs], ...], "radius": r}.
PresentationSpec presentation_from_json(const json& j);

/// Writes j.dump(2) plus a newline.
void write_json(const std::string& path, const json& j);
json read_json(const std::string& path);

}  // namespace coarseforge
