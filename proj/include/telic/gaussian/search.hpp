#pragma once

#include "telic/gaussian/nav.hpp"

namespace telic::gaussian {

struct ProjectionToState {
    GaussianPolicy policy;
    DivergenceValue complexity;
};

/// Information projection of `ref` onto the labeled state: the minimum-
/// complexity policy whose classification is `label`. Coarse grid scan over
/// the task's search box, zoomed local grids, then derivative-free
/// golden-section refinement along the active state boundary. Throws
/// StateNotFoundError when the state is empty inside the box.
ProjectionToState project_policy_to_state(const GaussianPolicy& ref, const std::string& label,
                                          const NavTask& task);

/// The policy maximizing delta_p toward the labeled region subject to
/// policy_complexity(., ref) <= delta (grid plus refinement along the
/// delta-contour, which is the boundary of a convex feasible set). With a
/// zero budget this returns ref.
GaussianPolicy nearest_policy_within_budget(const GaussianPolicy& ref, const std::string& label,
                                            const NavTask& task, double delta_nats);

/// Budget-constrained move toward a state that need not be reachable:
/// minimizes the telic distance min_{s in state} KL(s || p') over policies p'
/// with KL(p' || ref) <= delta. The inner minimum is evaluated against the
/// state's boundary cells (the in-state minimizer of the convex KL lies on
/// the boundary when ref is outside); the outer search walks the budget
/// contour. This is the optimizer behind the reachability sweep; unlike the
/// delta_p objective it stays meaningful when other states sit in between.
GaussianPolicy nearest_policy_to_state(const GaussianPolicy& ref, const std::string& label,
                                       const NavTask& task, double delta_nats);

/// Split an unreachable state: compute pi_M = nearest_policy_within_budget
/// toward `label` under the task budget, insert region M centered at pi_M's
/// final-position mean with radius split_radius_scale * target radius, ranked
/// between S_0 and the target. Throws NoSplitNeededError when the target's
/// projection already fits the budget and SplitCollisionError when M would
/// overlap an existing region.
NavTask split_state_gaussian(const NavTask& task, const std::string& label);

/// Helper shared by splitting paths: insert a region centered at `center`
/// with the scaled radius of `target_label`, ranked between S_0 and the
/// target. Exposed for the refinement backend.
NavTask insert_intermediate_region(const NavTask& task, double center,
                                   const std::string& target_label, std::string new_label = "");

}  // namespace telic::gaussian
