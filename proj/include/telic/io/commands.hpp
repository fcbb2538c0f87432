#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "telic/io/config.hpp"

namespace telic::io {

/// Shared state of one CLI invocation. Commands write data files through
/// emit() (atomic write + manifest record) and return the process exit code:
/// 0 success, 2 domain-negative (not controllable / refinement failed /
/// monotonicity violation), exceptions bubble up as usage/config errors (1).
struct RunContext {
    ExperimentConfig config;
    std::string out_dir;
    std::uint64_t seed = 0;
    Base base = Base::nats;
    std::string hash;
    int threads = 0;  ///< 0 = library default
    std::vector<std::string> emitted;

    void emit(const std::string& filename, const std::string& content);
    std::string provenance(const std::string& command) const;
};

RunContext make_context(ExperimentConfig config, const std::string& out_dir,
                        std::uint64_t seed_override, bool has_seed_override,
                        const char* base_override);

int cmd_simulate(RunContext& ctx);
int cmd_phase(RunContext& ctx);
int cmd_reach(RunContext& ctx);
int cmd_refine(RunContext& ctx);
int cmd_curves(RunContext& ctx);
int cmd_sanov(RunContext& ctx);

/// Writes manifest.json (config hash, tool version, seed, wall time, emitted
/// files). The manifest itself is metadata and is not listed.
void write_manifest(RunContext& ctx, const std::string& command, double wall_ms);

}  // namespace telic::io
