#pragma once

#include <string>
#include <vector>

#include "telic/gaussian/nav.hpp"
#include "telic/gaussian/search.hpp"

namespace telic::gaussian {

struct GoalCurvePoint {
    double budget_nats = 0.0;
    double max_delta_p = 0.0;
    GaussianPolicy argmax;
};

struct GoalComplexityCurve {
    std::string state_label;
    std::vector<GoalCurvePoint> points;
};

/// For each budget delta_i and each region state: the largest delta_p toward
/// that state attainable with policy_complexity <= delta_i from `ref`.
/// The argmax at a smaller budget is carried forward as a candidate, so the
/// curves are non-decreasing by construction (nested feasible sets).
std::vector<GoalComplexityCurve> goal_complexity_curve(const NavTask& task,
                                                       const GaussianPolicy& ref,
                                                       const std::vector<double>& budgets_nats);

struct GranularityCurvePoint {
    double epsilon = 0.0;
    double neg_log_epsilon = 0.0;
    double complexity_nats = 0.0;  ///< required complexity to reach the state
    bool present = true;           ///< false when the state is empty at this epsilon
};

struct GranularityComplexityCurve {
    std::string state_label;
    std::vector<GranularityCurvePoint> points;
};

/// For each sensitivity epsilon: recompute the state boundaries and report
/// the projection complexity of `ref` onto each region state. Larger epsilon
/// shrinks a state, so required complexity is non-decreasing in epsilon
/// (equivalently non-increasing in -log epsilon); the argmin at a larger
/// epsilon is carried to smaller ones to keep that monotone structurally.
std::vector<GranularityComplexityCurve> granularity_complexity_curve(
    const NavTask& task, const GaussianPolicy& ref, const std::vector<double>& epsilons);

}  // namespace telic::gaussian
