#include "chipopt/config.hpp"

#include <fstream>
#include <set>
#include <unordered_set>

#include "chipopt/errors.hpp"

namespace chipopt {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(Errc::ConfigError, path + ": " + msg);
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(path, "must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(path + "/" + it.key(), "unknown key");
}

const json* get(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const json& require(const json& j, const std::string& path, const std::string& key) {
  const json* v = get(j, key);
  if (!v) fail(path + "/" + key, "missing required field");
  return *v;
}

double number_field(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "must be a number");
  return j.get<double>();
}

std::int64_t int_field(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "must be an integer");
  return j.get<std::int64_t>();
}

bool bool_field(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "must be a boolean");
  return j.get<bool>();
}

std::string string_field(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "must be a string");
  return j.get<std::string>();
}

ChipletSpec parse_chiplet(const json& j, const std::string& path) {
  check_keys(j, path, {"name", "type", "count", "width_mm", "height_mm", "phys", "can_relay",
                       "description"});
  ChipletSpec spec;
  spec.name = string_field(require(j, path, "name"), path + "/name");
  if (spec.name.empty()) fail(path + "/name", "must not be empty");
  spec.type = chiplet_type_from_string(string_field(require(j, path, "type"), path + "/type"),
                                       path + "/type");
  spec.width = number_field(require(j, path, "width_mm"), path + "/width_mm");
  spec.height = number_field(require(j, path, "height_mm"), path + "/height_mm");
  if (!(spec.width > 0.0)) fail(path + "/width_mm", "must be > 0");
  if (!(spec.height > 0.0)) fail(path + "/height_mm", "must be > 0");
  const json& phys = require(j, path, "phys");
  if (!phys.is_array() || phys.empty()) fail(path + "/phys", "must be a non-empty array");
  for (std::size_t i = 0; i < phys.size(); ++i) {
    std::string ppath = path + "/phys/" + std::to_string(i);
    const json& p = phys[i];
    if (!p.is_array() || p.size() != 2) fail(ppath, "must be an [x, y] pair");
    spec.phys.push_back({Point{number_field(p[0], ppath + "/0"), number_field(p[1], ppath + "/1")}});
  }
  spec.can_relay = bool_field(require(j, path, "can_relay"), path + "/can_relay");
  try {
    spec.validate();
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return spec;
}

Architecture parse_architecture(const json& j, const std::string& path) {
  check_keys(j, path, {"distance_type", "max_link_length_mm", "l_phy", "l_link", "l_relay",
                       "grid", "chiplets"});
  Architecture arch;
  arch.distance_type = distance_from_string(
      string_field(require(j, path, "distance_type"), path + "/distance_type"),
      path + "/distance_type");
  arch.max_link_length_mm =
      number_field(require(j, path, "max_link_length_mm"), path + "/max_link_length_mm");
  if (!(arch.max_link_length_mm > 0.0)) fail(path + "/max_link_length_mm", "must be > 0");
  auto lat_field = [&](const char* key) {
    std::int64_t v = int_field(require(j, path, key), path + "/" + key);
    if (v < 0) fail(path + "/" + key, "must be >= 0");
    return static_cast<int>(v);
  };
  arch.latency.l_phy = lat_field("l_phy");
  arch.latency.l_link = lat_field("l_link");
  arch.latency.l_relay = lat_field("l_relay");

  if (const json* grid = get(j, "grid")) {
    std::string gpath = path + "/grid";
    check_keys(*grid, gpath, {"rows", "cols", "spacing_mm"});
    if (const json* v = get(*grid, "rows")) {
      std::int64_t rows = int_field(*v, gpath + "/rows");
      if (rows < 0) fail(gpath + "/rows", "must be >= 0 (0 = derive)");
      arch.grid_rows = static_cast<int>(rows);
    }
    if (const json* v = get(*grid, "cols")) {
      std::int64_t cols = int_field(*v, gpath + "/cols");
      if (cols < 0) fail(gpath + "/cols", "must be >= 0 (0 = derive)");
      arch.grid_cols = static_cast<int>(cols);
    }
    if (const json* v = get(*grid, "spacing_mm")) {
      arch.grid_spacing_mm = number_field(*v, gpath + "/spacing_mm");
      if (!(arch.grid_spacing_mm > 0.0)) fail(gpath + "/spacing_mm", "must be > 0");
    }
  }

  const json& chiplets = require(j, path, "chiplets");
  if (!chiplets.is_array() || chiplets.empty()) fail(path + "/chiplets", "must be a non-empty array");
  std::vector<std::pair<ChipletSpec, int>> catalog;
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < chiplets.size(); ++i) {
    std::string cpath = path + "/chiplets/" + std::to_string(i);
    ChipletSpec spec = parse_chiplet(chiplets[i], cpath);
    std::int64_t count = int_field(require(chiplets[i], cpath, "count"), cpath + "/count");
    if (count < 0) fail(cpath + "/count", "must be >= 0");
    if (!names.insert(spec.name).second) fail(cpath + "/name", "duplicate chiplet name");
    catalog.emplace_back(std::move(spec), static_cast<int>(count));
  }
  Architecture built = make_architecture(std::move(catalog));
  built.distance_type = arch.distance_type;
  built.max_link_length_mm = arch.max_link_length_mm;
  built.latency = arch.latency;
  built.grid_rows = arch.grid_rows;
  built.grid_cols = arch.grid_cols;
  built.grid_spacing_mm = arch.grid_spacing_mm;
  if (built.instance_spec.empty()) fail(path + "/chiplets", "total chiplet count must be >= 1");
  try {
    built.finalize();
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return built;
}

std::array<double, 4> parse_class_weights(const json& j, const std::string& path) {
  check_keys(j, path, {"c2c", "c2m", "c2i", "m2i"});
  std::array<double, 4> out{};
  const char* keys[4] = {"c2c", "c2m", "c2i", "m2i"};
  for (int c = 0; c < 4; ++c) {
    out[c] = number_field(require(j, path, keys[c]), path + "/" + keys[c]);
    if (out[c] < 0.0) fail(path + "/" + keys[c], "must be >= 0");
  }
  return out;
}

GaParams parse_ga(const json& j, const std::string& path) {
  check_keys(j, path, {"population", "elitism", "tournament", "mutation_prob"});
  GaParams ga;
  ga.population = static_cast<int>(int_field(require(j, path, "population"), path + "/population"));
  ga.elitism = static_cast<int>(int_field(require(j, path, "elitism"), path + "/elitism"));
  ga.tournament = static_cast<int>(int_field(require(j, path, "tournament"), path + "/tournament"));
  ga.mutation_prob = number_field(require(j, path, "mutation_prob"), path + "/mutation_prob");
  try {
    ga.validate();
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return ga;
}

SaParams parse_sa(const json& j, const std::string& path) {
  check_keys(j, path, {"initial_temp", "iterations_per_round", "alpha", "beta", "schedule"});
  SaParams sa;
  sa.initial_temp = number_field(require(j, path, "initial_temp"), path + "/initial_temp");
  sa.iterations_per_round = static_cast<int>(
      int_field(require(j, path, "iterations_per_round"), path + "/iterations_per_round"));
  sa.alpha = number_field(require(j, path, "alpha"), path + "/alpha");
  sa.beta = number_field(require(j, path, "beta"), path + "/beta");
  if (const json* v = get(j, "schedule"))
    sa.schedule = schedule_from_string(string_field(*v, path + "/schedule"), path + "/schedule");
  try {
    sa.validate();
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return sa;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  const std::string root;
  check_keys(j, "/", {"description", "general", "architecture", "weights", "ga", "sa", "output"});
  ExperimentConfig cfg;
  if (const json* v = get(j, "description")) cfg.description = string_field(*v, "/description");

  const json& gen = require(j, root, "general");
  check_keys(gen, "/general",
             {"algorithms", "representation", "time_budget_s", "eval_budget", "repetitions",
              "norm_samples", "mutation_mode", "seed", "jobs"});
  const json& algs = require(gen, "/general", "algorithms");
  if (!algs.is_array() || algs.empty()) fail("/general/algorithms", "must be a non-empty array");
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < algs.size(); ++i) {
    std::string a = string_field(algs[i], "/general/algorithms/" + std::to_string(i));
    if (a != "br" && a != "ga" && a != "sa")
      fail("/general/algorithms/" + std::to_string(i), "must be one of br, ga, sa");
    if (!seen.insert(a).second)
      fail("/general/algorithms/" + std::to_string(i), "duplicate algorithm");
    cfg.algorithms.push_back(a);
  }
  cfg.representation =
      string_field(require(gen, "/general", "representation"), "/general/representation");
  if (cfg.representation != "homogeneous" && cfg.representation != "heterogeneous")
    fail("/general/representation", "must be homogeneous or heterogeneous");
  if (const json* v = get(gen, "time_budget_s")) {
    cfg.time_budget_s = number_field(*v, "/general/time_budget_s");
    if (!(*cfg.time_budget_s > 0.0)) fail("/general/time_budget_s", "must be > 0");
  }
  if (const json* v = get(gen, "eval_budget")) {
    std::int64_t n = int_field(*v, "/general/eval_budget");
    if (n < 1) fail("/general/eval_budget", "must be >= 1");
    cfg.eval_budget = static_cast<std::uint64_t>(n);
  }
  if (cfg.time_budget_s.has_value() == cfg.eval_budget.has_value())
    fail("/general", "exactly one of time_budget_s and eval_budget must be set");
  cfg.repetitions =
      static_cast<int>(int_field(require(gen, "/general", "repetitions"), "/general/repetitions"));
  if (cfg.repetitions < 1) fail("/general/repetitions", "must be >= 1");
  cfg.norm_samples =
      static_cast<int>(int_field(require(gen, "/general", "norm_samples"), "/general/norm_samples"));
  if (cfg.norm_samples < 1) fail("/general/norm_samples", "must be >= 1");
  cfg.mutation_mode = mutation_mode_from_string(
      string_field(require(gen, "/general", "mutation_mode"), "/general/mutation_mode"),
      "/general/mutation_mode");
  std::int64_t seed = int_field(require(gen, "/general", "seed"), "/general/seed");
  if (seed < 0) fail("/general/seed", "must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);
  if (const json* v = get(gen, "jobs")) {
    cfg.jobs = static_cast<int>(int_field(*v, "/general/jobs"));
    if (cfg.jobs < 1) fail("/general/jobs", "must be >= 1");
  }

  cfg.architecture = parse_architecture(require(j, root, "architecture"), "/architecture");

  const json& w = require(j, root, "weights");
  check_keys(w, "/weights", {"latency", "throughput", "area"});
  cfg.weights.latency = parse_class_weights(require(w, "/weights", "latency"), "/weights/latency");
  cfg.weights.throughput =
      parse_class_weights(require(w, "/weights", "throughput"), "/weights/throughput");
  cfg.weights.area = number_field(require(w, "/weights", "area"), "/weights/area");
  try {
    cfg.weights.validate();
  } catch (const Error& e) {
    fail("/weights", e.what());
  }

  if (const json* v = get(j, "ga")) cfg.ga = parse_ga(*v, "/ga");
  if (const json* v = get(j, "sa")) cfg.sa = parse_sa(*v, "/sa");
  if (const json* v = get(j, "output")) {
    check_keys(*v, "/output", {"svg_scale"});
    if (const json* s = get(*v, "svg_scale")) {
      cfg.svg_scale = number_field(*s, "/output/svg_scale");
      if (!(cfg.svg_scale > 0.0)) fail("/output/svg_scale", "must be > 0");
    }
  }

  if (cfg.representation == "homogeneous") {
    try {
      validate_grid_architecture(cfg.architecture);
    } catch (const Error& e) {
      fail("/architecture", e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, path + ": invalid JSON: " + e.what());
  }
  return parse_config(j);
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  json j;
  if (!cfg.description.empty()) j["description"] = cfg.description;
  json gen;
  gen["algorithms"] = cfg.algorithms;
  gen["representation"] = cfg.representation;
  if (cfg.time_budget_s) gen["time_budget_s"] = *cfg.time_budget_s;
  if (cfg.eval_budget) gen["eval_budget"] = *cfg.eval_budget;
  gen["repetitions"] = cfg.repetitions;
  gen["norm_samples"] = cfg.norm_samples;
  gen["mutation_mode"] = to_config_string(cfg.mutation_mode);
  gen["seed"] = cfg.seed;
  gen["jobs"] = cfg.jobs;
  j["general"] = gen;

  json arch;
  arch["distance_type"] = to_config_string(cfg.architecture.distance_type);
  arch["max_link_length_mm"] = cfg.architecture.max_link_length_mm;
  arch["l_phy"] = cfg.architecture.latency.l_phy;
  arch["l_link"] = cfg.architecture.latency.l_link;
  arch["l_relay"] = cfg.architecture.latency.l_relay;
  arch["grid"] = {{"rows", cfg.architecture.grid_rows},
                  {"cols", cfg.architecture.grid_cols},
                  {"spacing_mm", cfg.architecture.grid_spacing_mm}};
  json chiplets = json::array();
  for (std::size_t s = 0; s < cfg.architecture.specs.size(); ++s) {
    const ChipletSpec& spec = cfg.architecture.specs[s];
    int count = 0;
    for (std::size_t idx : cfg.architecture.instance_spec)
      if (idx == s) ++count;
    json phys = json::array();
    for (const Phy& p : spec.phys) phys.push_back({p.pos.x, p.pos.y});
    chiplets.push_back({{"name", spec.name},
                        {"type", to_string(spec.type)},
                        {"count", count},
                        {"width_mm", spec.width},
                        {"height_mm", spec.height},
                        {"phys", phys},
                        {"can_relay", spec.can_relay}});
  }
  arch["chiplets"] = chiplets;
  j["architecture"] = arch;

  auto class_weights = [](const std::array<double, 4>& w) {
    return json{{"c2c", w[0]}, {"c2m", w[1]}, {"c2i", w[2]}, {"m2i", w[3]}};
  };
  j["weights"] = {{"latency", class_weights(cfg.weights.latency)},
                  {"throughput", class_weights(cfg.weights.throughput)},
                  {"area", cfg.weights.area}};
  j["ga"] = {{"population", cfg.ga.population},
             {"elitism", cfg.ga.elitism},
             {"tournament", cfg.ga.tournament},
             {"mutation_prob", cfg.ga.mutation_prob}};
  j["sa"] = {{"initial_temp", cfg.sa.initial_temp},
             {"iterations_per_round", cfg.sa.iterations_per_round},
             {"alpha", cfg.sa.alpha},
             {"beta", cfg.sa.beta},
             {"schedule", to_config_string(cfg.sa.schedule)}};
  j["output"] = {{"svg_scale", cfg.svg_scale}};
  return j;
}

std::string to_config_string(MutationMode m) {
  switch (m) {
    case MutationMode::AnyBoth: return "any_both";
    case MutationMode::AnyOne: return "any_one";
    case MutationMode::NeighborBoth: return "neighbor_both";
    case MutationMode::NeighborOne: return "neighbor_one";
  }
  return "?";
}

std::string to_config_string(DistanceType d) {
  return d == DistanceType::Euclidean ? "euclidean" : "manhattan";
}

std::string to_config_string(CoolingSchedule s) {
  switch (s) {
    case CoolingSchedule::ExpMult: return "exp_mult";
    case CoolingSchedule::LogMult: return "log_mult";
    case CoolingSchedule::LinMult: return "lin_mult";
    case CoolingSchedule::QuadMult: return "quad_mult";
  }
  return "?";
}

std::string to_config_string(Rotation r) {
  switch (r) {
    case Rotation::R0: return "r0";
    case Rotation::R90: return "r90";
    case Rotation::R180: return "r180";
    case Rotation::R270: return "r270";
  }
  return "?";
}

MutationMode mutation_mode_from_string(const std::string& s, const std::string& path) {
  if (s == "any_both") return MutationMode::AnyBoth;
  if (s == "any_one") return MutationMode::AnyOne;
  if (s == "neighbor_both") return MutationMode::NeighborBoth;
  if (s == "neighbor_one") return MutationMode::NeighborOne;
  fail(path, "must be one of any_both, any_one, neighbor_both, neighbor_one");
}

DistanceType distance_from_string(const std::string& s, const std::string& path) {
  if (s == "euclidean") return DistanceType::Euclidean;
  if (s == "manhattan") return DistanceType::Manhattan;
  fail(path, "must be euclidean or manhattan");
}

CoolingSchedule schedule_from_string(const std::string& s, const std::string& path) {
  if (s == "exp_mult") return CoolingSchedule::ExpMult;
  if (s == "log_mult") return CoolingSchedule::LogMult;
  if (s == "lin_mult") return CoolingSchedule::LinMult;
  if (s == "quad_mult") return CoolingSchedule::QuadMult;
  fail(path, "must be one of exp_mult, log_mult, lin_mult, quad_mult");
}

Rotation rotation_from_string(const std::string& s, const std::string& path) {
  if (s == "r0") return Rotation::R0;
  if (s == "r90") return Rotation::R90;
  if (s == "r180") return Rotation::R180;
  if (s == "r270") return Rotation::R270;
  fail(path, "must be one of r0, r90, r180, r270");
}

ChipletType chiplet_type_from_string(const std::string& s, const std::string& path) {
  if (s == "compute") return ChipletType::Compute;
  if (s == "memory") return ChipletType::Memory;
  if (s == "io") return ChipletType::Io;
  fail(path, "must be one of compute, memory, io");
}

}  // namespace chipopt
