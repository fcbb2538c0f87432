#pragma once

#include <map>
#include <string>
#include <vector>

#include "telic/backend.hpp"

namespace telic {

struct ChainStep {
    BackendPoint point;
    TelicState state;
    double step_complexity_nats = 0.0;  ///< KL(point || previous point)
};

struct StateRecord {
    bool reachable = false;
    /// Witness chain {(pi_t, S_t)}: starts at the default policy, each later
    /// step lands in a previously unreached state with step complexity within
    /// budget. Empty for unreachable states.
    std::vector<ChainStep> chain;
    std::string diagnostic;
};

struct ReachabilityReport {
    std::vector<TelicState> states;
    std::map<std::string, StateRecord> records;

    bool all_reachable() const;
    std::vector<std::string> reachable_labels() const;
    std::vector<std::string> unreachable_labels() const;
};

/// Recursive reachability sweep from the default policy. Unreached states are
/// attempted farthest-first (descending telic distance from the current
/// policy, label ascending on ties): aiming at a distant state and falling
/// short is exactly how intermediate states acquire useful witness policies.
/// After the recursion a closure pass re-attempts every unreached state from
/// every recorded witness until nothing changes, so multi-hop chains the
/// depth-first order misses are still found. Optimizer failures are recorded
/// per state and never abort the sweep.
ReachabilityReport find_reachable_states(const BackendPoint& pi0, double delta_nats,
                                         const Backend& backend);

/// True iff every state of the backend's goal is reachable.
std::pair<bool, ReachabilityReport> is_telic_controllable(const BackendPoint& pi0,
                                                          double delta_nats,
                                                          const Backend& backend);

/// Machine-check of the witness chains: every chain starts at pi0, each step
/// classifies into its recorded state, and each consecutive pair respects the
/// budget (within 1e-9). Throws TelicError on violation.
void verify_report_chains(const ReachabilityReport& report, const BackendPoint& pi0,
                          double delta_nats, const Backend& backend);

}  // namespace telic
