#include "coarseforge/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "coarseforge/rng.hpp"

namespace coarseforge {

const std::vector<std::string>& stage_order() {
  static const std::vector<std::string> order = {"gen",          "delta",      "cone",    "deelectrify",
                                                 "factor-check", "prox-close", "promote", "hhs-verify"};
  return order;
}

namespace {

// Alternatives per dependency slot; any one of them satisfies it.
const std::map<std::string, std::vector<std::vector<std::string>>>& dependencies() {
  static const std::map<std::string, std::vector<std::vector<std::string>>> deps = {
      {"gen", {}},
      {"delta", {{"gen"}}},
      {"cone", {{"gen"}}},
      {"deelectrify", {{"cone"}}},
      {"factor-check", {{"gen"}}},
      {"prox-close", {{"gen"}}},
      {"promote", {{"prox-close", "factor-check"}}},
      {"hhs-verify", {{"promote", "factor-check"}}},
  };
  return deps;
}

std::size_t rank(const std::string& s) {
  const auto& o = stage_order();
  return static_cast<std::size_t>(std::find(o.begin(), o.end(), s) - o.begin());
}

const json& params(const ExperimentConfig& c, const std::string& stage) {
  static const json empty = json::object();
  return c.stages.contains(stage) ? c.stages.at(stage) : empty;
}

std::string gen_kind(const ExperimentConfig& c) { return params(c, "gen").value("kind", std::string("cayley")); }

std::vector<Subgroup> subgroups_from(const json& j) {
  std::vector<Subgroup> out;
  for (const auto& h : j) out.push_back(h.get<Subgroup>());
  return out;
}

struct Csv {
  std::vector<std::string> rows;
  void add(const std::string& stage, const std::string& field, const json& value) {
    rows.push_back(stage + "," + field + "," + value.dump());
  }
  void write(const std::string& path) const {
    std::ofstream out(path);
    out << "stage,field,value\n";
    for (const auto& r : rows) out << r << '\n';
  }
};

}  // namespace

void validate_config(const ExperimentConfig& c) {
  if (c.pipeline.empty()) throw ArgumentError("pipeline is empty");
  std::set<std::string> seen;
  std::size_t last = 0;
  for (const auto& s : c.pipeline) {
    if (rank(s) == stage_order().size()) throw ArgumentError("unknown stage '" + s + "'");
    if (seen.count(s)) throw ArgumentError("stage '" + s + "' listed twice");
    if (!seen.empty() && rank(s) < last) throw ArgumentError("stage '" + s + "' is out of order");
    for (const auto& slot : dependencies().at(s)) {
      bool ok = false;
      for (const auto& alt : slot) ok = ok || seen.count(alt);
      if (!ok) throw ArgumentError("stage '" + s + "' needs '" + slot.front() + "' earlier in the pipeline");
    }
    seen.insert(s);
    last = rank(s);
  }
  for (const auto& [name, block] : c.stages.items())
    if (!block.is_object()) throw ArgumentError("parameters of '" + name + "' must be an object");

  const std::string kind = gen_kind(c);
  static const std::set<std::string> kinds = {"cayley", "star", "path", "cycle", "random_tree", "file"};
  if (!kinds.count(kind)) throw ArgumentError("gen: unknown kind '" + kind + "'");
  const json& g = params(c, "gen");
  if (kind == "cayley" && (!g.contains("generators") || g.value("radius", -1) < 0))
    throw ArgumentError("gen: cayley needs generators and a non-negative radius");
  if (kind == "star" && (g.value("rays", 0) < 1 || g.value("ray_length", 0) < 1))
    throw ArgumentError("gen: star needs rays >= 1 and ray_length >= 1");
  if ((kind == "path" || kind == "cycle" || kind == "random_tree") && g.value("n", 0) < 1)
    throw ArgumentError("gen: n must be positive");
  if (kind == "file" && !g.contains("path")) throw ArgumentError("gen: file needs a path");
  if (seen.count("prox-close")) {
    if (kind != "cayley") throw ArgumentError("prox-close needs a cayley ball");
    const json& p = params(c, "prox-close");
    if (!p.contains("subgroups") || !p.at("subgroups").is_array() || p.at("subgroups").empty())
      throw ArgumentError("prox-close: subgroups must be a non-empty list of word lists");
    if (p.value("height_cap", 4) < 1) throw ArgumentError("prox-close: height_cap must be >= 1");
  }
  if (seen.count("cone") && params(c, "cone").contains("subgroups") && kind != "cayley")
    throw ArgumentError("cone: subgroups need a cayley ball");
  if (seen.count("factor-check")) {
    const std::string mode = params(c, "factor-check").value("mode", std::string("factor"));
    if (mode != "factor" && mode != "weak") throw ArgumentError("factor-check: mode must be factor or weak");
  }
  if (seen.count("promote") && !seen.count("prox-close") &&
      params(c, "factor-check").value("mode", std::string("factor")) != "weak")
    throw ArgumentError("promote needs prox-close or a weak factor-check");
  if (seen.count("hhs-verify")) {
    const json& h = params(c, "hhs-verify");
    if (h.value("sample_budget", 1) < 1 || h.value("lll_budget", 1) < 1)
      throw ArgumentError("hhs-verify: budgets must be positive");
    if (!seen.count("promote") && params(c, "factor-check").value("mode", std::string("factor")) != "factor")
      throw ArgumentError("hhs-verify needs promote or a factor-mode factor-check");
  }
  if (seen.count("deelectrify") && params(c, "deelectrify").value("pairs", 20) < 1)
    throw ArgumentError("deelectrify: pairs must be positive");
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  try {
    c.pipeline = j.at("pipeline").get<std::vector<std::string>>();
    if (j.contains("stages")) c.stages = j.at("stages");
    c.seed = j.value("seed", std::uint64_t{1});
    c.output_dir = j.value("output_dir", std::string("out"));
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed config: ") + e.what());
  }
  validate_config(c);
  return c;
}

std::vector<std::string> with_prerequisites(const ExperimentConfig& c, const std::string& target) {
  if (rank(target) == stage_order().size()) throw ArgumentError("unknown stage '" + target + "'");
  std::set<std::string> need;
  auto listed = [&](const std::string& s) {
    return std::find(c.pipeline.begin(), c.pipeline.end(), s) != c.pipeline.end() || c.stages.contains(s);
  };
  auto add = [&](auto&& self, const std::string& s) -> void {
    if (!need.insert(s).second) return;
    for (const auto& slot : dependencies().at(s)) {
      std::string pick = slot.front();
      for (const auto& alt : slot)
        if (listed(alt)) {
          pick = alt;
          break;
        }
      self(self, pick);
    }
  };
  add(add, target);
  std::vector<std::string> out(need.begin(), need.end());
  std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) { return rank(a) < rank(b); });
  return out;
}

RunResult run(const ExperimentConfig& c) {
  validate_config(c);
  RunResult res;
  std::filesystem::create_directories(c.output_dir);
  Csv csv;
  const std::string dir = c.output_dir + "/";

  std::shared_ptr<const CayleyBall> ball;
  std::shared_ptr<const MetricGraph> host;
  std::shared_ptr<const ConedGraph> coned;
  std::optional<FactorFamily> weak, factor;
  std::optional<Promotion> promotion;
  int delta_cache = -1;
  auto host_delta = [&] {
    if (delta_cache < 0) delta_cache = static_cast<int>(std::ceil(hyperbolicity(*host).delta_thin));
    return delta_cache;
  };

  auto emit = [&](const std::string& stage, const json& j) {
    const std::string path = dir + stage + ".json";
    write_json(path, j);
    res.artifacts.push_back(path);
  };
  auto fail = [&](const std::string& stage, int code, const std::string& msg) {
    res.exit_code = code;
    res.failed_stage = stage;
    res.message = msg;
  };

  for (const auto& stage : c.pipeline) {
    const json& p = params(c, stage);
    try {
      if (stage == "gen") {
        const std::string kind = gen_kind(c);
        if (kind == "cayley") {
          ball = std::make_shared<const CayleyBall>(cayley_ball(presentation_from_json(p)));
          host = std::shared_ptr<const MetricGraph>(ball, &ball->graph);
          emit(stage, to_json(*ball));
        } else {
          MetricGraph g;
          if (kind == "star") g = star_fixture(p.at("rays").get<int>(), p.at("ray_length").get<int>());
          else if (kind == "path") g = path_graph(p.at("n").get<std::size_t>());
          else if (kind == "cycle") g = cycle_graph(p.at("n").get<std::size_t>());
          else if (kind == "random_tree") g = random_tree(p.at("n").get<std::size_t>(), p.value("seed", c.seed));
          else g = graph_from_json(read_json(p.at("path").get<std::string>()));
          host = std::make_shared<const MetricGraph>(std::move(g));
          emit(stage, to_json(*host));
        }
        csv.add(stage, "vertices", host->size());
        csv.add(stage, "edges", host->edges().size());
      } else if (stage == "delta") {
        HypOptions ho;
        ho.seed = c.seed;
        const HypReport h = hyperbolicity(*host, ho);
        delta_cache = static_cast<int>(std::ceil(h.delta_thin));
        emit(stage, to_json(h));
        csv.add(stage, "delta_thin", h.delta_thin);
        csv.add(stage, "delta_4pt", h.delta_4pt);
      } else if (stage == "cone") {
        std::vector<SubspaceRef> family;
        if (p.contains("subgroups")) {
          CosetOptions co;
          co.core = p.value("core", -1);
          co.delta = host_delta();
          family = coset_family(ball, subgroups_from(p.at("subgroups")), co).members();
        } else {
          std::vector<std::string> names;
          if (p.contains("subspaces")) names = p.at("subspaces").get<std::vector<std::string>>();
          else
            for (const auto& [n, s] : host->subspaces()) names.push_back(n);
          for (const auto& n : names) {
            auto it = host->subspaces().find(n);
            if (it == host->subspaces().end()) throw ArgumentError("cone: unknown subspace '" + n + "'");
            family.push_back(make_subspace(*host, n, it->second));
          }
        }
        coned = std::make_shared<const ConedGraph>(host, std::move(family));
        json members = json::array();
        int kmax = 0;
        for (std::size_t i = 0; i < coned->family().size(); ++i) {
          const int k = coned->member_coqc(static_cast<int>(i));
          kmax = std::max(kmax, k);
          members.push_back({{"name", coned->family()[i].name}, {"size", coned->family()[i].vertices.size()},
                             {"coqc", k}});
        }
        json out = {{"members", members}, {"cone_edges", coned->cone_edges().size()},
                    {"coned_diameter", coned->coned().diameter()}, {"K", kmax}};
        bool ok = true;
        if (p.contains("pigeonhole_theta")) {
          json ph = json::array();
          for (int theta : p.at("pigeonhole_theta").get<std::vector<int>>()) {
            const PigeonholeReport r = pigeonhole_check(*coned, theta, all_vertices(*host), p.value("alternates", 64));
            ok = ok && r.violations.empty();
            ph.push_back(to_json(r));
          }
          out["pigeonhole"] = ph;
        }
        emit(stage, out);
        csv.add(stage, "members", coned->family().size());
        csv.add(stage, "K", kmax);
        csv.add(stage, "coned_diameter", out["coned_diameter"]);
        if (!ok) fail(stage, 1, "pigeonhole violations");
      } else if (stage == "deelectrify") {
        const int pairs = p.value("pairs", 20);
        AlgoOptions ao;
        ao.delta = p.value("delta", -1);
        if (ao.delta < 0) ao.delta = host_delta();
        ao.mode = p.value("mode", std::string("total")) == "embedded" ? DeElectMode::embedded : DeElectMode::total;
        XorShift64Star rng(c.seed);
        json runs = json::array();
        double max_c = 0, max_eps = 0;
        std::size_t bad = 0;
        for (int i = 0; i < pairs; ++i) {
          const Vertex x = static_cast<Vertex>(rng.below(host->size()));
          const Vertex y = static_cast<Vertex>(rng.below(host->size()));
          const GoodQuasiGeodesic r = good_quasigeodesic(*coned, x, y, ao);
          max_c = std::max(max_c, r.constants.tau2.C);
          max_eps = std::max(max_eps, r.constants.tau2.epsilon);
          bad += r.violations.size();
          json j = to_json(r);
          j["x"] = x;
          j["y"] = y;
          runs.push_back(j);
        }
        emit(stage, {{"runs", runs}, {"max_tau2_C", max_c}, {"max_tau2_epsilon", max_eps}, {"violations", bad}});
        csv.add(stage, "max_tau2_C", max_c);
        csv.add(stage, "max_tau2_epsilon", max_eps);
        csv.add(stage, "violations", bad);
        if (bad) fail(stage, 1, "de-electrification violations");
      } else if (stage == "factor-check") {
        std::vector<SubspaceRef> members;
        if (p.value("from", std::string("subspaces")) == "cone" && coned) {
          members = coned->family();
        } else {
          std::vector<std::string> names;
          if (p.contains("members")) names = p.at("members").get<std::vector<std::string>>();
          else
            for (const auto& [n, s] : host->subspaces()) names.push_back(n);
          for (const auto& n : names) {
            auto it = host->subspaces().find(n);
            if (it == host->subspaces().end()) throw ArgumentError("factor-check: unknown subspace '" + n + "'");
            members.push_back(make_subspace(*host, n, it->second));
          }
        }
        const std::string mode = p.value("mode", std::string("factor"));
        FactorFamily f;
        if (mode == "weak") {
          WeakOptions wo;
          wo.delta = p.value("delta", -1) >= 0 ? p.value("delta", -1) : host_delta();
          wo.xi = p.value("xi", -1);
          wo.R_used = p.value("R_used", -1);
          wo.d_prime = p.value("d_prime", -1);
          wo.theta_max = p.value("theta_max", 1 << 14);
          f = check_weak_factor_system(host, std::move(members), wo);
          weak = f;
        } else {
          FactorOptions fo;
          fo.delta = p.value("delta", -1) >= 0 ? p.value("delta", -1) : host_delta();
          fo.xi = p.value("xi", -1);
          fo.R_used = p.value("R_used", -1);
          f = check_factor_system(host, std::move(members), fo);
          factor = f;
        }
        emit(stage, to_json(f));
        csv.add(stage, "passed", f.passed());
        csv.add(stage, "K", f.constants.K);
        csv.add(stage, "c", f.constants.c);
        csv.add(stage, "xi", f.constants.xi);
        csv.add(stage, "B", f.constants.B);
        if (!f.passed()) {
          const auto v = f.violations();
          std::string msg = mode + " factor check failed";
          if (!v.empty()) {
            msg += ": " + v.front().check;
            if (v.front().check == "condition3")
              msg += " at v=" + std::to_string(v.front().witnesses.front()) +
                     " theta=" + std::to_string(static_cast<int>(v.front().bound));
          }
          fail(stage, 1, msg);
        }
      } else if (stage == "prox-close") {
        ClosureOptions co;
        co.height_cap = p.value("height_cap", 4);
        co.R_used = p.value("R_used", -1);
        co.cosets.core = p.value("core", -1);
        co.cosets.xi = p.value("xi", -1);
        co.cosets.delta = host_delta();
        const ClosureTrace t = prox_closure(ball, subgroups_from(p.at("subgroups")), co);
        WeakOptions wo;
        wo.delta = t.family.delta;
        wo.R_used = t.R_used;
        wo.theta_max = p.value("theta_max", 1 << 14);
        weak = check_weak_factor_system(t.family.host(), t.family.members(), wo);
        emit(stage, {{"trace", to_json(t)}, {"weak_check", to_json(*weak)}});
        csv.add(stage, "stabilized_at", t.stabilized_at);
        csv.add(stage, "classes", t.levels.back().classes);
        csv.add(stage, "weak_passed", weak->passed());
        if (!t.stabilized) fail(stage, 1, "closure did not stabilize within the height cap");
        else if (!weak->passed()) fail(stage, 1, "closure family failed the weak factor check");
      } else if (stage == "promote") {
        FactorOptions fo;
        fo.delta = weak->constants.delta;
        promotion = promote(*weak, fo);
        factor = promotion->family;
        emit(stage, to_json(*promotion));
        csv.add(stage, "classes", promotion->classes.classes.size());
        csv.add(stage, "passed", promotion->family.passed());
        csv.add(stage, "B", promotion->family.constants.B);
        if (!promotion->family.passed() || !promotion->violations.empty()) fail(stage, 1, "promotion failed");
      } else if (stage == "hhs-verify") {
        VerifyOptions vo;
        vo.sample_budget = p.value("sample_budget", std::uint64_t{2000});
        vo.lll_budget = p.value("lll_budget", std::uint64_t{200});
        vo.seed = c.seed;
        vo.delta = factor->constants.delta;
        const HhsStructure s = build_hhs(*factor);
        const AxiomReport r = verify_axioms(s, vo);
        emit(stage, to_json(r));
        for (const char* k : {"kappa0", "Theta", "E_bgi", "delta_prime", "H_kr", "complexity", "lipschitz"})
          csv.add(stage, k, to_json(r)[k]);
        csv.add(stage, "lll_E", r.lll.E);
        csv.add(stage, "lll_lambda", r.lll.lambda);
        if (!r.violations.empty()) fail(stage, 1, std::to_string(r.violations.size()) + " axiom violations");
      }
    } catch (const std::exception& e) {
      emit(stage, {{"error", e.what()}});
      fail(stage, 2, e.what());
    }
    if (res.exit_code != 0) break;
  }
  csv.write(dir + "summary.csv");
  res.artifacts.push_back(dir + "summary.csv");
  return res;
}

}  // namespace coarseforge
