#pragma once

#include <json.hpp>

#include "telic/discrete_backend.hpp"
#include "telic/gaussian/backend.hpp"
#include "telic/reachability.hpp"
#include "telic/refinement.hpp"

namespace telic::io {

nlohmann::json task_to_json(const gaussian::NavTask& task);
nlohmann::json goal_to_json(const Goal& goal);

/// States, reachable flags, and witness chains as arrays of
/// {policy-params, state-label, step-complexity}; divergences in `base`.
nlohmann::json report_to_json(const ReachabilityReport& report, Base base);

nlohmann::json refine_to_json(const RefineOutcome& outcome, Base base);

/// Round-trip partners used by the CLI tests.
gaussian::NavTask task_from_json(const nlohmann::json& doc);

}  // namespace telic::io
