#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hardedge/experiment.hpp"

namespace hardedge {

/// JSON form:
///   {"ensemble": {"m", "n", "plan": "iid"|"grid3"|"grid4", "atom", "seed", "l"},
///    "statistic": {"kind": "hard_edge_k", "k"} | "sqrt_sigma_min" | "condition_tau"
///                 | "distance_d1" | {"kind": "small_count", "c"}
///                 | {"kind": "pipeline_sigma_s", "s"},
///    "trials", "reference_law", "out"}
/// "l" defaults to 0, "reference_law" and "out" are optional.
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& json);

nlohmann::json statistic_to_json(const Statistic& statistic);
Statistic statistic_from_json(const nlohmann::json& json);

nlohmann::json ensemble_to_json(const EnsembleSpec& spec, std::uint64_t seed);
/// Returns the spec; the seed is read separately from json["seed"].
EnsembleSpec ensemble_from_json(const nlohmann::json& json);

ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const ExperimentConfig& config, const std::filesystem::path& path);

}  // namespace hardedge
