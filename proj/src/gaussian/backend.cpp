#include "telic/gaussian/backend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "telic/errors.hpp"

namespace telic::gaussian {

NavBackend::NavBackend(NavTask task) : task_(std::move(task)) { task_.validate(); }

GaussianPolicy NavBackend::to_policy(const BackendPoint& p) {
    if (p.size() != 2) throw TelicError("gaussian backend point must be (mu, sigma)");
    GaussianPolicy policy{p[0], p[1]};
    policy.validate();
    return policy;
}

std::vector<TelicState> NavBackend::states() const {
    std::vector<TelicState> out;
    for (const Region& r : task_.regions) out.push_back({r.label, -1});
    out.push_back({kDefaultStateLabel, -1});
    return out;
}

TelicState NavBackend::classify(const BackendPoint& p) const {
    return {classify_policy(to_policy(p), task_), -1};
}

BackendProjection NavBackend::project(const BackendPoint& from, const TelicState& s) const {
    BackendProjection out;
    try {
        const ProjectionToState proj = project_policy_to_state(to_policy(from), s.label, task_);
        out.target = to_point(proj.policy);
        out.divergence_nats = proj.complexity.in_nats();
    } catch (const StateNotFoundError& e) {
        out.attainable = false;
        out.divergence_nats = std::numeric_limits<double>::infinity();
        out.target = from;
        out.note = e.what();
    }
    return out;
}

BackendPoint NavBackend::constrained_improve(const BackendPoint& from, const TelicState& s,
                                             double delta_nats) const {
    const GaussianPolicy current = to_policy(from);
    if (classify_policy(current, task_) == s.label) return from;

    const ProjectionToState proj = project_policy_to_state(current, s.label, task_);
    if (proj.complexity.in_nats() <= delta_nats) return to_point(proj.policy);

    if (task_.has_region(s.label)) {
        return to_point(nearest_policy_to_state(current, s.label, task_, delta_nats));
    }

    // Budget-limited move toward S_0: minimize the best competing delta_p.
    const SearchBox& box = task_.box;
    const int res = task_.grid_resolution;
    double best_score = std::numeric_limits<double>::infinity();
    GaussianPolicy best = current;
    for (int i = 0; i < res; ++i) {
        const double sg = box.sigma_lo + (box.sigma_hi - box.sigma_lo) * i / (res - 1);
        for (int j = 0; j < res; ++j) {
            const double mu = box.mu_lo + (box.mu_hi - box.mu_lo) * j / (res - 1);
            const GaussianPolicy p{mu, sg};
            if (kl_between(p, current) > delta_nats) continue;
            double worst = -std::numeric_limits<double>::infinity();
            for (const Region& r : task_.regions) {
                worst = std::max(worst, delta_p(p, task_, r.label));
            }
            if (worst < best_score) {
                best_score = worst;
                best = p;
            }
        }
    }
    return to_point(best);
}

double NavBackend::complexity(const BackendPoint& a, const BackendPoint& b) const {
    return kl_between(to_policy(a), to_policy(b));
}

BackendPoint NavBackend::interpolate(const BackendPoint& a, const BackendPoint& b,
                                     double t) const {
    return {(1.0 - t) * a[0] + t * b[0], (1.0 - t) * a[1] + t * b[1]};
}

TelicState NavBackend::insert_intermediate_state(const BackendPoint& midpoint, double epsilon,
                                                 const TelicState& target) {
    NavTask edited = task_;
    edited.epsilon = epsilon;
    const double center = final_position_distribution(to_policy(midpoint), edited).mean;
    NavTask updated = insert_intermediate_region(edited, center, target.label);
    // the inserted region is the one absent from the previous task
    std::string inserted;
    for (const Region& r : updated.regions) {
        if (!task_.has_region(r.label)) {
            inserted = r.label;
            break;
        }
    }
    task_ = std::move(updated);
    return {inserted, -1};
}

std::unique_ptr<Backend> NavBackend::clone() const {
    return std::make_unique<NavBackend>(*this);
}

std::string NavBackend::describe_point(const BackendPoint& p) const {
    std::ostringstream os;
    os << "(mu=" << p[0] << ", sigma=" << p[1] << ")";
    return os.str();
}

}  // namespace telic::gaussian
