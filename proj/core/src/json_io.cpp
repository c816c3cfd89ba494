#include "coarseforge/json_io.hpp"

#include <fstream>

namespace coarseforge {

json to_json(const Violation& v) {
  return {{"check", v.check}, {"bound", v.bound}, {"measured", v.measured}, {"witnesses", v.witnesses}};
}

json to_json(const std::vector<Violation>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

json to_json(const MetricGraph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  json subs = json::object();
  for (const auto& [name, s] : g.subspaces()) subs[name] = s;
  return {{"n", g.size()}, {"edges", edges}, {"subspaces", subs}};
}

json to_json(const CayleyBall& b) {
  json j = to_json(b.graph);
  j["radius"] = b.radius;
  j["words"] = b.words;
  j["alphabet"] = b.rewriter.alphabet();
  json rules = json::array();
  for (const auto& [l, r] : b.rewriter.rules()) rules.push_back({l, r});
  j["rules"] = rules;
  return j;
}

json to_json(const HypReport& h) {
  return {{"delta_thin", h.delta_thin},
          {"delta_4pt", h.delta_4pt},
          {"delta_all", h.delta_all},
          {"thin_witness", h.thin_witness},
          {"four_point_witness", h.four_point_witness},
          {"thin_exhaustive", h.thin_exhaustive},
          {"four_point_exhaustive", h.four_point_exhaustive}};
}

json to_json(const VPath& p) {
  json pieces = json::array();
  for (const auto& pc : p.pieces) pieces.push_back({{"begin", pc.begin}, {"end", pc.end}, {"label", pc.label}});
  return {{"vertices", p.vertices},
          {"host", p.host == Host::base ? "base" : "coned"},
          {"step_labels", p.step_labels},
          {"pieces", pieces}};
}

json to_json(const QGMeasure& q) {
  return {{"C_grid", q.C_grid}, {"eps", q.eps}, {"C", q.C}, {"epsilon", q.epsilon},
          {"worst_subpath", {q.worst_subpath.first, q.worst_subpath.second}}};
}

json to_json(const GoodQuasiGeodesic& r) {
  const AlgoConstants& c = r.constants;
  json constants = {{"delta", c.delta}, {"K", c.K}, {"xi", c.xi}, {"d_prime", c.d_prime}, {"p", c.p},
                    {"D", c.D}, {"Delta", c.Delta}, {"ball_radius", c.ball_radius},
                    {"sweep_radius", c.sweep_radius}, {"tau1", to_json(c.tau1)}, {"tau2", to_json(c.tau2)}};
  json s1 = {{"components", r.step1.components}, {"replaced", r.step1.replaced},
             {"interruptions", r.step1.interruptions}, {"containment", r.step1.containment},
             {"contained", r.step1.contained}};
  json s2 = {{"skipped", r.step2.skipped}, {"t", r.step2.t}, {"advance", r.step2.advance},
             {"splices", r.step2.splices}, {"step_bound", r.step2.step_bound}};
  return {{"gamma", to_json(r.gamma)}, {"tilde", to_json(r.tilde)}, {"constants", constants},
          {"step1", s1}, {"step2", s2}, {"violations", to_json(r.violations)}};
}

json to_json(const FactorFamily& f) {
  const FamilyConstants& c = f.constants;
  json members = json::array();
  for (const auto& m : f.members)
    members.push_back({{"name", m.name}, {"vertices", m.vertices}, {"connected", m.connected}});
  json items = json::array();
  for (const auto& it : f.items)
    items.push_back({{"item", it.item}, {"pass", it.pass}, {"measured", it.measured},
                     {"violations", to_json(it.violations)}});
  return {{"kind", to_string(f.kind)},
          {"passed", f.passed()},
          {"constants", {{"delta", c.delta}, {"K", c.K}, {"qi", c.qi}, {"c", c.c}, {"xi", c.xi}, {"B", c.B},
                         {"q", c.q}, {"Dprime", c.d_prime}, {"R_used", c.R_used}}},
          {"members", members},
          {"items", items}};
}

json to_json(const EquivClasses& ec) {
  json below = json::array();
  for (const auto& row : ec.below) {
    json r = json::array();
    for (bool b : row) r.push_back(b);
    below.push_back(r);
  }
  return {{"classes", ec.classes}, {"representative", ec.representative}, {"R_used", ec.R_used},
          {"max_intra_hausdorff", ec.max_intra_hausdorff}, {"closure_flagged", ec.closure_flagged},
          {"below", below}, {"antisymmetric", ec.antisymmetric}};
}

json to_json(const Promotion& p) {
  json promoted = json::array();
  for (const auto& m : p.promoted)
    promoted.push_back({{"name", m.member.name}, {"size", m.member.vertices.size()},
                        {"zeta_requested", m.zeta_requested}, {"zeta_used", m.zeta_used},
                        {"max_hausdorff", m.max_hausdorff}, {"within_zeta", m.within_zeta}});
  return {{"classes", to_json(p.classes)}, {"promoted", promoted}, {"family", to_json(p.family)},
          {"violations", to_json(p.violations)}};
}

json to_json(const CosetFamily& f) {
  json cosets = json::array();
  for (const auto& c : f.cosets)
    cosets.push_back({{"name", c.subspace.name}, {"subgroup", c.subgroup}, {"representative", c.representative},
                      {"vertices", c.subspace.vertices}, {"touches_boundary", c.touches_boundary}});
  return {{"subgroups", f.subgroups}, {"core", f.core}, {"delta", f.delta}, {"K", f.K},
          {"xi_threshold", f.xi_threshold}, {"cosets", cosets}};
}

json to_json(const ClosureTrace& t) {
  json levels = json::array();
  for (const auto& l : t.levels)
    levels.push_back({{"subgroups", l.subgroups}, {"cosets", l.cosets}, {"classes", l.classes},
                      {"proximal", l.proximal}, {"added", l.added}, {"boundary_flags", l.boundary_flags},
                      {"violations", to_json(l.violations)}});
  return {{"levels", levels}, {"stabilized", t.stabilized}, {"stabilized_at", t.stabilized_at},
          {"R_used", t.R_used}, {"family", to_json(t.family)}};
}

json to_json(const AxiomReport& r) {
  json uniq = json::array();
  for (const auto& u : r.uniqueness) uniq.push_back({{"theta", u.theta}, {"T", u.T}});
  return {{"schema_version", kAxiomSchemaVersion},
          {"delta", r.delta},
          {"K", r.K},
          {"core_margin", r.core_margin},
          {"core_size", r.core_size},
          {"lipschitz", r.lipschitz},
          {"pi_diameter", r.pi_diameter},
          {"kappa0", r.kappa0},
          {"Theta", r.Theta},
          {"Theta_bound", r.Theta_bound},
          {"rho_diameter", r.rho_diameter},
          {"E_bgi", r.E_bgi},
          {"bgi_bound", r.bgi_bound},
          {"lll", {{"lambda", r.lll.lambda}, {"E", r.lll.E}, {"samples", r.lll.samples},
                   {"max_T", r.lll.max_T}, {"found", r.lll.found}}},
          {"uniqueness", uniq},
          {"complexity", r.complexity},
          {"delta_prime", r.delta_prime},
          {"H_kr", r.H_kr},
          {"delta_per_index", r.delta_per_index},
          {"violations", to_json(r.violations)}};
}

json to_json(const PigeonholeReport& r) {
  return {{"theta", r.theta}, {"threshold", r.threshold}, {"pairs_checked", r.pairs_checked},
          {"paths_checked", r.paths_checked}, {"violations", to_json(r.violations)}};
}

json to_json(const NineteenReport& r) {
  return {{"delta", r.delta}, {"xi", r.xi}, {"d_prime", r.d_prime}, {"p", r.p}, {"D", r.d},
          {"pairs", r.pairs}, {"max_pieces", r.max_pieces}, {"max_endpoint_gap", r.max_endpoint_gap},
          {"max_geodesic_escape", r.max_geodesic_escape}, {"violations", to_json(r.violations)}};
}

MetricGraph graph_from_json(const json& j) {
  try {
    const std::size_t n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    std::map<std::string, VertexSet> subs;
    if (j.contains("subspaces"))
      for (const auto& [name, s] : j.at("subspaces").items()) subs[name] = make_vertex_set(s.get<std::vector<Vertex>>());
    return MetricGraph(n, std::move(edges), std::move(subs));
  } catch (const json::exception& e) {
    throw StructuralError(std::string("malformed graph json: ") + e.what());
  }
}

PresentationSpec presentation_from_json(const json& j) {
  try {
    PresentationSpec p;
    p.generators = j.at("generators").get<std::vector<std::string>>();
    if (j.contains("rules"))
      for (const auto& r : j.at("rules")) p.rules.emplace_back(r.at(0).get<std::string>(), r.at(1).get<std::string>());
    p.radius = j.value("radius", 0);
    return p;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed presentation json: ") + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path);
  out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ArgumentError(path + ": " + e.what());
  }
}

}  // namespace coarseforge
