#pragma once

#include "telic/reachability.hpp"

namespace telic {

struct SplitResult {
    double t_star = 0.0;          ///< maximal segment parameter within budget
    BackendPoint midpoint;        ///< interpolate(pi0, projection target, t_star)
    TelicState new_state;         ///< the inserted intermediate state
};

/// Algorithm-1 style split of one unreachable state: project pi0 onto the
/// state, bisect along the backend's interpolation segment for the largest t
/// whose complexity from pi0 stays within delta (valid because the divergence
/// along the segment is 0 at t=0, continuous, and nondecreasing by convexity),
/// and insert the intermediate state at that midpoint. When the constraint
/// binds, |complexity(midpoint) - delta| <= 1e-6, and t* is maximal. Throws
/// NoSplitNeededError when the projection already fits the budget.
SplitResult split_unreachable_state(const BackendPoint& pi0, const TelicState& s,
                                    double delta_nats, double epsilon, Backend& backend);

struct RefineOutcome {
    bool controllable = false;
    int rounds_used = 0;
    std::vector<TelicState> inserted;
    ReachabilityReport report;    ///< final reachability report
    std::string failure_reason;   ///< empty on success
};

/// Goal refinement loop: compute the reachable set, split every unreachable
/// state, re-derive the state family, and repeat until the representation is
/// telic-controllable or max_rounds is exhausted. The backend's goal is
/// mutated in place; split collisions and collapses are recorded and the
/// affected state is left unreachable rather than aborting the loop.
RefineOutcome refine_goal(const BackendPoint& pi0, double delta_nats, double epsilon,
                          Backend& backend, int max_rounds);

}  // namespace telic
