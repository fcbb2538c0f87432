#include "telic/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "telic/errors.hpp"

namespace telic {

SplitResult split_unreachable_state(const BackendPoint& pi0, const TelicState& s,
                                    double delta_nats, double epsilon, Backend& backend) {
    const BackendProjection proj = backend.project(pi0, s);
    if (!proj.attainable) {
        throw TelicError("cannot split " + s.label + ": " +
                         (proj.note.empty() ? "projection unattainable" : proj.note));
    }
    if (proj.divergence_nats <= delta_nats) {
        throw NoSplitNeededError(s.label);
    }

    auto excess = [&](double t) {
        return backend.complexity(backend.interpolate(pi0, proj.target, t), pi0) - delta_nats;
    };

    // excess(0) = -delta <= 0 and excess(1) = divergence - delta > 0; the
    // divergence is nondecreasing along the segment, so bisection applies.
    double lo = 0.0, hi = 1.0;
    double f_lo = excess(0.0);
    int iterations = 0;
    while ((hi - lo) > 1e-15 && -f_lo > 1e-9) {
        if (++iterations > 200) {
            throw TelicError("split bisection failed to converge for " + s.label);
        }
        const double mid = 0.5 * (lo + hi);
        const double f_mid = excess(mid);
        if (f_mid <= 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    SplitResult result;
    result.t_star = lo;
    result.midpoint = backend.interpolate(pi0, proj.target, lo);
    result.new_state = backend.insert_intermediate_state(result.midpoint, epsilon, s);
    return result;
}

RefineOutcome refine_goal(const BackendPoint& pi0, double delta_nats, double epsilon,
                          Backend& backend, int max_rounds) {
    if (max_rounds < 1) throw TelicError("max_rounds must be >= 1");
    RefineOutcome outcome;

    for (int round = 1; round <= max_rounds; ++round) {
        outcome.rounds_used = round;
        outcome.report = find_reachable_states(pi0, delta_nats, backend);
        if (outcome.report.all_reachable()) {
            outcome.controllable = true;
            return outcome;
        }

        // Split order: descending projection divergence from pi0, then label.
        std::vector<std::pair<double, TelicState>> targets;
        for (const TelicState& s : outcome.report.states) {
            auto it = outcome.report.records.find(s.label);
            if (it != outcome.report.records.end() && it->second.reachable) continue;
            double d = std::numeric_limits<double>::infinity();
            try {
                d = backend.project(pi0, s).divergence_nats;
            } catch (const TelicError&) {
            }
            targets.emplace_back(d, s);
        }
        std::sort(targets.begin(), targets.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second.label < b.second.label;
        });

        int splits_this_round = 0;
        std::string last_error;
        for (const auto& [d, s] : targets) {
            try {
                const SplitResult split =
                    split_unreachable_state(pi0, s, delta_nats, epsilon, backend);
                outcome.inserted.push_back(split.new_state);
                ++splits_this_round;
            } catch (const NoSplitNeededError&) {
                // one-hop reachable but the sweep's optimizer missed it; the
                // next round's sweep gets another chance
            } catch (const TelicError& e) {
                last_error = e.what();
            }
        }
        if (splits_this_round == 0) {
            outcome.failure_reason = "refinement did not converge: no splittable state left";
            if (!last_error.empty()) outcome.failure_reason += " (" + last_error + ")";
            return outcome;
        }
    }

    outcome.report = find_reachable_states(pi0, delta_nats, backend);
    if (outcome.report.all_reachable()) {
        outcome.controllable = true;
    } else {
        outcome.failure_reason = "refinement did not converge within " +
                                 std::to_string(max_rounds) + " rounds";
    }
    return outcome;
}

}  // namespace telic
