#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "telic/discrete_backend.hpp"
#include "telic/divergence.hpp"
#include "telic/gaussian/nav.hpp"

namespace telic::io {

struct SimulateConfig {
    std::vector<gaussian::GaussianPolicy> policies;
    int count = 500;
};

struct PhaseConfig {
    int resolution = 200;
    int svg_resolution = 120;
    std::vector<std::string> panels{"original"};
    std::string shift_label;
    double shift_center = 0.0;
    bool has_shift = false;
};

struct CurvesConfig {
    std::vector<double> budgets;
    std::vector<double> epsilons;
    /// Each entry is either an explicit policy or the marker "pi_M".
    std::vector<std::optional<gaussian::GaussianPolicy>> references;
    std::string pi_m_target;  ///< region the computed pi_M aims for
};

struct RefineConfig {
    int max_rounds = 5;
};

struct SanovConfig {
    std::vector<int> sample_sizes;
    std::int64_t trials = 100000;
    std::string state_label;
};

/// A discrete instance: alphabets, a base distribution (either an explicit
/// mass list or a policy/environment pushforward at the given horizon), and
/// the goal (feature list, sensitivity, bins, budget).
struct DiscreteInstance {
    Alphabet observations;
    Alphabet actions;
    ExperienceDistribution base;
    Goal goal;
    double delta_nats = 0.0;

    DiscreteInstance(Alphabet obs, Alphabet act, ExperienceDistribution base_dist, Goal g,
                     double delta)
        : observations(std::move(obs)),
          actions(std::move(act)),
          base(std::move(base_dist)),
          goal(std::move(g)),
          delta_nats(delta) {}
};

struct ExperimentConfig {
    std::optional<std::uint64_t> seed;
    std::optional<Base> base;
    std::optional<gaussian::NavTask> task;
    std::optional<DiscreteInstance> discrete;
    std::optional<SimulateConfig> simulate;
    std::optional<PhaseConfig> phase;
    std::optional<CurvesConfig> curves;
    std::optional<RefineConfig> refine;
    bool has_reach_section = false;
    nlohmann::json raw;  ///< canonical parsed form (nlohmann sorts keys)
    std::optional<SanovConfig> sanov;
};

/// Parse and validate a config document. Unknown fields anywhere are
/// rejected with a ConfigError naming the offending path.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config_file(const std::string& path);

/// FNV-1a 64 hash of the canonical serialized config, as fixed-width hex.
std::string config_hash(const nlohmann::json& canonical);

}  // namespace telic::io
