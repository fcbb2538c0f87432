#include "telic/gaussian/curves.hpp"

#include <algorithm>
#include <cmath>

#include "telic/errors.hpp"

namespace telic::gaussian {

std::vector<GoalComplexityCurve> goal_complexity_curve(const NavTask& task,
                                                       const GaussianPolicy& ref,
                                                       const std::vector<double>& budgets_nats) {
    task.validate();
    if (!std::is_sorted(budgets_nats.begin(), budgets_nats.end())) {
        throw TelicError("budgets must be sorted ascending");
    }
    if (!budgets_nats.empty() && budgets_nats.front() < 0.0) {
        throw TelicError("budgets must be non-negative");
    }
    std::vector<GoalComplexityCurve> curves;
    for (const Region& r : task.regions) {
        GoalComplexityCurve curve;
        curve.state_label = r.label;
        GaussianPolicy carried = ref;
        double carried_dp = delta_p(ref, task, r.label);
        for (const double budget : budgets_nats) {
            GaussianPolicy p = nearest_policy_within_budget(ref, r.label, task, budget);
            double dp = delta_p(p, task, r.label);
            if (carried_dp > dp) {  // previous argmax stays feasible at a larger budget
                dp = carried_dp;
                p = carried;
            }
            carried = p;
            carried_dp = dp;
            curve.points.push_back({budget, dp, p});
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::vector<GranularityComplexityCurve> granularity_complexity_curve(
    const NavTask& task, const GaussianPolicy& ref, const std::vector<double>& epsilons) {
    task.validate();
    if (!std::is_sorted(epsilons.begin(), epsilons.end())) {
        throw TelicError("epsilons must be sorted ascending");
    }
    for (const double e : epsilons) {
        if (!(e > 0.0 && e < 1.0)) throw TelicError("epsilons must lie in (0,1)");
    }
    std::vector<GranularityComplexityCurve> curves;
    for (const Region& r : task.regions) {
        GranularityComplexityCurve curve;
        curve.state_label = r.label;
        curve.points.resize(epsilons.size());
        // Descending epsilon: a policy inside {dp >= eps2} is inside
        // {dp >= eps1} for eps1 < eps2, so its complexity caps the next entry.
        bool have_carry = false;
        GaussianPolicy carried = ref;
        double carried_cost = 0.0;
        for (std::size_t k = epsilons.size(); k-- > 0;) {
            NavTask at_eps = task;
            at_eps.epsilon = epsilons[k];
            GranularityCurvePoint point;
            point.epsilon = epsilons[k];
            point.neg_log_epsilon = -std::log(epsilons[k]);
            try {
                const ProjectionToState proj = project_policy_to_state(ref, r.label, at_eps);
                point.complexity_nats = proj.complexity.in_nats();
                if (have_carry && carried_cost < point.complexity_nats &&
                    delta_p(carried, at_eps, r.label) >= epsilons[k]) {
                    point.complexity_nats = carried_cost;
                } else {
                    carried = proj.policy;
                    carried_cost = point.complexity_nats;
                }
                have_carry = true;
            } catch (const StateNotFoundError&) {
                point.present = false;
                have_carry = false;
            }
            curve.points[k] = point;
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

}  // namespace telic::gaussian
