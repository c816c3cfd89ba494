#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coarseforge/json_io.hpp"

namespace coarseforge {

/// Canonical stage order. "delta" is optional and only reports hyperbolicity.
const std::vector<std::string>& stage_order();

struct ExperimentConfig {
  std::vector<std::string> pipeline;
  json stages = json::object();  // per-stage parameter blocks keyed by stage name
  std::uint64_t seed = 1;
  std::string output_dir = "out";
};

/// {"pipeline": [...], "stages": {...}, "seed": n, "output_dir": "..."}; validates.
ExperimentConfig config_from_json(const json& j);

/// Throws ArgumentError naming the first offending stage or parameter.
void validate_config(const ExperimentConfig& c);

/// The stages needed to run `target`, in canonical order, preferring stages
/// already listed in the config when a dependency has alternatives.
std::vector<std::string> with_prerequisites(const ExperimentConfig& c, const std::string& target);

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 violations or failed check, 2 stage error
  std::string failed_stage;
  std::string message;
  std::vector<std::string> artifacts;
};

/// Runs the stages in order, writing <stage>.json and summary.csv into output_dir.
/// A failing stage stops the run after its artifact is written.
RunResult run(const ExperimentConfig& c);

}  // namespace coarseforge
