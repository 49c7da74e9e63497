#include "hardedge/config.hpp"

#include <fstream>
#include <stdexcept>

namespace hardedge {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

template <class T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("config: missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: bad value for \"") + key + "\": " + e.what());
  }
}

}  // namespace

json statistic_to_json(const Statistic& statistic) {
  return std::visit(Overloaded{[](const HardEdgeK& s) { return json{{"kind", "hard_edge_k"}, {"k", s.k}}; },
                               [](const SqrtSigmaMin&) { return json("sqrt_sigma_min"); },
                               [](const ConditionTau&) { return json("condition_tau"); },
                               [](const DistanceD1&) { return json("distance_d1"); },
                               [](const SmallCount& s) { return json{{"kind", "small_count"}, {"c", s.c}}; },
                               [](const PipelineSigmaS& s) {
                                 return json{{"kind", "pipeline_sigma_s"}, {"s", s.s}};
                               }},
                    statistic);
}

Statistic statistic_from_json(const json& j) {
  const std::string kind = j.is_string() ? j.get<std::string>() : required<std::string>(j, "kind");
  if (kind == "hard_edge_k") return HardEdgeK{j.is_object() && j.contains("k") ? j["k"].get<std::size_t>() : 1};
  if (kind == "sqrt_sigma_min") return SqrtSigmaMin{};
  if (kind == "condition_tau") return ConditionTau{};
  if (kind == "distance_d1") return DistanceD1{};
  if (kind == "small_count") return SmallCount{j.is_object() && j.contains("c") ? j["c"].get<double>() : 0.1};
  if (kind == "pipeline_sigma_s") return PipelineSigmaS{required<std::size_t>(j, "s")};
  throw std::invalid_argument("config: unknown statistic \"" + kind + "\"");
}

json ensemble_to_json(const EnsembleSpec& spec, std::uint64_t seed) {
  return json{{"m", spec.rows},          {"n", spec.cols},   {"plan", spec.plan_name()},
              {"atom", spec.atom_name()}, {"seed", seed},     {"l", spec.dummy_rows}};
}

EnsembleSpec ensemble_from_json(const json& j) {
  EnsembleSpec spec;
  spec.cols = required<std::size_t>(j, "n");
  spec.rows = j.contains("m") ? required<std::size_t>(j, "m") : spec.cols;
  spec.dummy_rows = j.contains("l") ? required<std::size_t>(j, "l") : 0;
  const std::string plan = j.contains("plan") ? required<std::string>(j, "plan") : "iid";
  if (plan == "iid") {
    spec.plan = atom_from_name(required<std::string>(j, "atom"));
  } else if (plan == "grid3") {
    spec.plan = sparse_signed_grid(3);
  } else if (plan == "grid4") {
    spec.plan = sparse_signed_grid(4);
  } else {
    throw std::invalid_argument("config: unknown plan \"" + plan + "\"");
  }
  return spec;
}

json config_to_json(const ExperimentConfig& config) {
  json j{{"ensemble", ensemble_to_json(config.ensemble, config.master_seed)},
         {"statistic", statistic_to_json(config.statistic)},
         {"trials", config.trials}};
  if (config.reference_law) j["reference_law"] = *config.reference_law;
  if (!config.output_dir.empty()) j["out"] = config.output_dir;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  ExperimentConfig config;
  const json& ensemble = j.at("ensemble");
  config.ensemble = ensemble_from_json(ensemble);
  config.master_seed = ensemble.contains("seed") ? required<std::uint64_t>(ensemble, "seed") : 0;
  config.statistic = j.contains("statistic") ? statistic_from_json(j["statistic"]) : Statistic{HardEdgeK{}};
  config.trials = required<std::size_t>(j, "trials");
  if (j.contains("reference_law") && !j["reference_law"].is_null()) {
    config.reference_law = required<std::string>(j, "reference_law");
  }
  if (j.contains("out")) config.output_dir = required<std::string>(j, "out");
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config: " + std::string(e.what()));
  }
  return config_from_json(j);
}

void save_config(const ExperimentConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file " + path.string());
  out << config_to_json(config).dump(2) << '\n';
}

}  // namespace hardedge
