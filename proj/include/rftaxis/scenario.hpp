#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rftaxis/field.hpp"
#include "rftaxis/objectives.hpp"
#include "rftaxis/sa.hpp"

namespace rftaxis {

// Grid spec for the brute-force bridge optimum, when no closed form exists.
struct OracleGrid {
    Vec lo, hi;
    double res = 0.05;
};

// Everything needed to reproduce an experiment byte for byte.
struct Scenario {
    std::string name;
    int dim = 2;
    ObjectiveKind objective = ObjectiveKind::seek_source;
    std::vector<FieldModel> fields;  // one node (seek) or two (bridge)
    NoiseSpec noise;
    EstimatorConfig estimator;
    GainSchedule schedule;
    Vec start;
    int max_iter = 100;
    StopRule stop;
    std::uint64_t master_seed = 1;
    double bridge_offset_db = 120.0;
    std::optional<Vec> optimum;       // explicit, or resolved via the oracle grid
    std::optional<OracleGrid> oracle_grid;
    int rate_k_min = 0;               // 0: default max(1, max_iter/10)
    double success_threshold_m = 2.0;

    std::uint64_t hash = 0;           // FNV-1a of the canonical config dump
    nlohmann::json raw;
};

std::uint64_t fnv1a64(const std::string& bytes);

Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

// Resolves the distance-to-optimum reference: explicit optimum_m, the seek
// source, or the bridge oracle grid argmin (computed once here). Empty when
// the scenario gives no way to know the optimum.
std::optional<Vec> resolve_optimum(const Scenario& sc);

} // namespace rftaxis
