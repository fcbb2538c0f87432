#include "telic/gaussian/nav.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "telic/errors.hpp"

namespace telic::gaussian {

void GaussianPolicy::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
        throw TelicError("gaussian policy needs finite mu and sigma > 0");
    }
}

void NavTask::validate() const {
    if (horizon < 1) throw TelicError("task horizon must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw TelicError("task epsilon must lie in (0,1)");
    if (delta_nats < 0.0) throw TelicError("task delta must be non-negative");
    if (split_radius_scale <= 0.0) throw TelicError("split_radius_scale must be positive");
    default_policy.validate();
    std::set<std::string> labels{kDefaultStateLabel};
    std::set<double> ranks{0.0};
    for (const Region& r : regions) {
        if (r.radius <= 0.0) throw TelicError("region \"" + r.label + "\" needs radius > 0");
        if (!labels.insert(r.label).second) {
            throw TelicError("duplicate region label " + r.label);
        }
        if (!ranks.insert(r.rank).second) {
            throw TelicError("region \"" + r.label + "\" reuses a rank (0 is reserved for S_0)");
        }
    }
    for (std::size_t i = 0; i < regions.size(); ++i) {
        for (std::size_t j = i + 1; j < regions.size(); ++j) {
            if (regions[i].lo() < regions[j].hi() && regions[j].lo() < regions[i].hi()) {
                throw TelicError("regions " + regions[i].label + " and " + regions[j].label +
                                 " overlap");
            }
        }
    }
    if (!(box.mu_lo < box.mu_hi) || !(box.sigma_lo < box.sigma_hi) || box.sigma_lo <= 0.0) {
        throw TelicError("invalid search box");
    }
    if (grid_resolution < 2) throw TelicError("grid resolution must be >= 2");
}

const Region& NavTask::region(const std::string& label) const {
    for (const Region& r : regions) {
        if (r.label == label) return r;
    }
    throw TelicError("unknown region label " + label);
}

bool NavTask::has_region(const std::string& label) const {
    return std::any_of(regions.begin(), regions.end(),
                       [&](const Region& r) { return r.label == label; });
}

std::vector<std::string> NavTask::state_labels() const {
    std::vector<std::string> labels;
    labels.reserve(regions.size() + 1);
    for (const Region& r : regions) labels.push_back(r.label);
    labels.push_back(kDefaultStateLabel);
    return labels;
}

FinalDistribution final_position_distribution(const GaussianPolicy& p, const NavTask& task) {
    if (task.scaling == TimeScaling::direct) return {p.mu, p.sigma};
    const double t = static_cast<double>(task.horizon);
    return {t * p.mu, std::sqrt(t) * p.sigma};
}

double region_probability(const GaussianPolicy& p, const NavTask& task, const Region& r) {
    const FinalDistribution fin = final_position_distribution(p, task);
    const double scale = 1.0 / (std::sqrt(2.0) * fin.std);
    const double v = 0.5 * (std::erf((r.hi() - fin.mean) * scale) -
                            std::erf((r.lo() - fin.mean) * scale));
    return std::clamp(v, 0.0, 1.0);
}

double delta_p(const GaussianPolicy& p, const NavTask& task, const std::string& target_label) {
    const Region& target = task.region(target_label);  // throws on unknown label
    double best_other = 0.0;
    for (const Region& r : task.regions) {
        if (r.label == target_label) continue;
        best_other = std::max(best_other, region_probability(p, task, r));
    }
    return region_probability(p, task, target) - best_other;
}

std::string classify_policy(const GaussianPolicy& p, const NavTask& task) {
    for (const Region& r : task.regions) {
        if (delta_p(p, task, r.label) >= task.epsilon) return r.label;
    }
    return kDefaultStateLabel;
}

DivergenceValue policy_complexity(const GaussianPolicy& p, const GaussianPolicy& ref,
                                  Base base) {
    return DivergenceValue::from_nats(kl_between(p, ref), base);
}

double kl_between(const GaussianPolicy& a, const GaussianPolicy& b) {
    const double dm = a.mu - b.mu;
    double kl = std::log(b.sigma / a.sigma) +
                (a.sigma * a.sigma + dm * dm) / (2.0 * b.sigma * b.sigma) - 0.5;
    return kl < 0.0 && kl > -1e-15 ? 0.0 : kl;
}

}  // namespace telic::gaussian
