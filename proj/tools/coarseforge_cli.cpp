// coarseforge command line: one subcommand per pipeline stage plus `run`.
//
// A stage subcommand runs that stage and everything it depends on. Parameters
// come from --config; the flags below fill in or override the common ones.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coarseforge/parallel.hpp"
#include "coarseforge/pipeline.hpp"

namespace cf = coarseforge;

namespace {

struct Flags {
  std::string config;
  std::uint64_t seed = 0;
  bool seed_set = false;
  unsigned threads = 0;
  std::string out;
  // gen shortcuts
  std::string presentation;
  std::string kind;
  std::size_t n = 0;
  int rays = 0;
  int ray_length = 0;
  int radius = -1;
  // prox-close
  std::string subgroups;
  int xi = -1;
  int height_cap = -1;
  // factor-check
  std::string mode;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

// "a;b" -> [[a],[b]], "aa,ab;b" -> [[aa,ab],[b]].
cf::json parse_subgroups(const std::string& s) {
  cf::json out = cf::json::array();
  for (const auto& h : split(s, ';')) out.push_back(split(h, ','));
  return out;
}

cf::ExperimentConfig assemble(const Flags& f, const std::string& target) {
  cf::json j = f.config.empty() ? cf::json{{"pipeline", cf::json::array()}, {"stages", cf::json::object()}}
                                : cf::read_json(f.config);
  if (!j.contains("stages")) j["stages"] = cf::json::object();
  cf::json& st = j["stages"];
  cf::json& gen = st["gen"];
  if (gen.is_null()) gen = cf::json::object();
  if (!f.presentation.empty()) {
    const cf::json p = cf::read_json(f.presentation);
    for (const auto& [k, v] : p.items()) gen[k] = v;
    gen["kind"] = "cayley";
  }
  if (!f.kind.empty()) gen["kind"] = f.kind;
  if (f.n) gen["n"] = f.n;
  if (f.rays) gen["rays"] = f.rays;
  if (f.ray_length) gen["ray_length"] = f.ray_length;
  if (f.radius >= 0) gen["radius"] = f.radius;
  if (!f.subgroups.empty()) {
    st["prox-close"]["subgroups"] = parse_subgroups(f.subgroups);
    if (target == "cone") st["cone"]["subgroups"] = parse_subgroups(f.subgroups);
  }
  if (f.xi >= 0) st["prox-close"]["xi"] = f.xi;
  if (f.height_cap >= 0) st["prox-close"]["height_cap"] = f.height_cap;
  if (!f.mode.empty()) st["factor-check"]["mode"] = f.mode;
  if (f.seed_set) j["seed"] = f.seed;
  if (!f.out.empty()) j["output_dir"] = f.out;
  for (auto it = st.begin(); it != st.end();)
    it = it.value().is_null() ? st.erase(it) : std::next(it);

  if (target != "run") {
    cf::ExperimentConfig partial;
    partial.pipeline = j["pipeline"].get<std::vector<std::string>>();
    partial.stages = st;
    j["pipeline"] = cf::with_prerequisites(partial, target);
  }
  return cf::config_from_json(j);
}

int execute(const Flags& f, const std::string& target) {
  if (f.threads) cf::set_thread_count(f.threads);
  cf::ExperimentConfig c;
  try {
    c = assemble(f, target);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  const cf::RunResult r = cf::run(c);
  for (const auto& a : r.artifacts) std::cout << a << '\n';
  if (r.exit_code != 0) std::cerr << r.failed_stage << ": " << r.message << '\n';
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coarseforge: coarse geometry of coned graphs and factor systems"};
  app.require_subcommand(1);
  Flags f;

  const std::vector<std::string> subs = {"gen",          "delta",      "cone",    "deelectrify",
                                         "factor-check", "prox-close", "promote", "hhs-verify", "run"};
  std::string chosen;
  for (const auto& name : subs) {
    CLI::App* sc = app.add_subcommand(name, name == "run" ? "run the configured pipeline"
                                                          : "run '" + name + "' and its prerequisites");
    sc->add_option("--config", f.config, "experiment config JSON")->check(CLI::ExistingFile);
    sc->add_option("--seed", f.seed, "seed for sampled sweeps")->each([&](const std::string&) { f.seed_set = true; });
    sc->add_option("--threads", f.threads, "worker threads (default COARSEFORGE_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    sc->add_option("--out", f.out, "output directory");
    if (name == "run") {
      sc->get_option("--config")->required();
    } else {
      sc->add_option("--presentation", f.presentation, "presentation JSON {generators, rules, radius}")
          ->check(CLI::ExistingFile);
      sc->add_option("--kind", f.kind, "graph kind")
          ->check(CLI::IsMember({"cayley", "star", "path", "cycle", "random_tree", "file"}));
      sc->add_option("--n", f.n, "vertex count for path, cycle, random_tree");
      sc->add_option("--rays", f.rays, "star ray count");
      sc->add_option("--ray-length", f.ray_length, "star ray length");
      sc->add_option("--radius", f.radius, "Cayley ball radius")->check(CLI::NonNegativeNumber);
    }
    if (name == "prox-close" || name == "cone" || name == "promote" || name == "hhs-verify") {
      sc->add_option("--subgroups", f.subgroups, "subgroups, e.g. \"a;b\" or \"aa,b;ab\"");
      sc->add_option("--xi", f.xi, "large-projection threshold")->check(CLI::NonNegativeNumber);
      sc->add_option("--height-cap", f.height_cap, "closure level cap")->check(CLI::PositiveNumber);
    }
    if (name == "factor-check")
      sc->add_option("--mode", f.mode, "factor or weak")->check(CLI::IsMember({"factor", "weak"}));
    sc->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return execute(f, chosen);
}
