#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chipopt/architecture.hpp"
#include "chipopt/cost.hpp"
#include "chipopt/grid_placement.hpp"
#include "chipopt/optimize.hpp"

namespace chipopt {

// Full experiment description as read from one JSON document. Validation is
// strict: unknown keys are rejected and every error message carries the
// JSON-pointer path of the offending field.
struct ExperimentConfig {
  std::string description;

  std::vector<std::string> algorithms;  // subset of {"br", "ga", "sa"}
  std::string representation;           // "homogeneous" | "heterogeneous"
  std::optional<double> time_budget_s;
  std::optional<std::uint64_t> eval_budget;
  int repetitions = 1;
  int norm_samples = 1;
  MutationMode mutation_mode = MutationMode::AnyOne;
  std::uint64_t seed = 0;
  int jobs = 1;

  Architecture architecture;
  CostWeights weights;
  GaParams ga;
  SaParams sa;
  double svg_scale = 20.0;

  Budget budget() const {
    if (eval_budget) return Budget::evals(*eval_budget);
    return Budget::wall_clock(*time_budget_s);
  }
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// Enum <-> config string helpers, shared with the results serializer.
std::string to_config_string(MutationMode m);
std::string to_config_string(DistanceType d);
std::string to_config_string(CoolingSchedule s);
std::string to_config_string(Rotation r);
MutationMode mutation_mode_from_string(const std::string& s, const std::string& path);
DistanceType distance_from_string(const std::string& s, const std::string& path);
CoolingSchedule schedule_from_string(const std::string& s, const std::string& path);
Rotation rotation_from_string(const std::string& s, const std::string& path);
ChipletType chiplet_type_from_string(const std::string& s, const std::string& path);

}  // namespace chipopt
