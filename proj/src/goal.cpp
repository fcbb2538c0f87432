#include "telic/goal.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

#include "telic/errors.hpp"

namespace telic {

FeatureSet FeatureSet::from_experiences(std::string label, std::vector<Experience> members) {
    auto set = std::make_shared<std::set<Experience>>(members.begin(), members.end());
    return FeatureSet(std::move(label),
                      [set](const Experience& h) { return set->count(h) > 0; });
}

FeatureSet FeatureSet::everything() {
    return FeatureSet("everything", [](const Experience&) { return true; });
}

FeatureSet FeatureSet::nothing() {
    return FeatureSet("nothing", [](const Experience&) { return false; });
}

double feature_probability(const ExperienceDistribution& P, const FeatureSet& phi) {
    double total = 0.0;
    const auto& support = P.support();
    const auto& masses = P.masses();
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (phi.contains(support[i])) total += masses[i];
    }
    return std::clamp(total, 0.0, 1.0);
}

void Goal::validate(bool enforce_min_width) const {
    if (epsilon < 0.0 || epsilon > 1.0) throw TelicError("goal epsilon must lie in [0,1]");
    if (bins.empty()) throw TelicError("goal needs at least one bin");
    if (std::abs(bins.front().lo) > 1e-12) throw TelicError("bins must start at 0");
    std::set<std::string> labels;
    std::set<double> ranks;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        const Bin& b = bins[i];
        if (b.hi <= b.lo) throw TelicError("bin \"" + b.label + "\" is empty or inverted");
        if (enforce_min_width && b.width() < epsilon - 1e-12) {
            throw TelicError("bin \"" + b.label + "\" is narrower than epsilon");
        }
        if (i + 1 < bins.size() && std::abs(bins[i + 1].lo - b.hi) > 1e-12) {
            throw TelicError("bins must tile [0,1] without gaps");
        }
        if (!labels.insert(b.label).second) throw TelicError("duplicate bin label " + b.label);
        if (!ranks.insert(b.rank).second) throw TelicError("duplicate bin rank");
    }
    if (std::abs(bins.back().hi - 1.0) > 1e-12 || !bins.back().closed_hi) {
        throw TelicError("last bin must close at 1");
    }
}

int Goal::bin_of(double f) const {
    for (std::size_t i = 0; i < bins.size(); ++i) {
        if (bins[i].contains(f)) return static_cast<int>(i);
    }
    // Coverage of [0,1] makes this unreachable for valid inputs; clamp as a
    // guard against values that drifted out of range.
    return f < 0.0 ? 0 : static_cast<int>(bins.size()) - 1;
}

Ordering prefers(const ExperienceDistribution& A, const ExperienceDistribution& B,
                 const Goal& g) {
    const double fa = feature_probability(A, g.features);
    const double fb = feature_probability(B, g.features);
    if (std::abs(fa - fb) <= g.epsilon) return Ordering::equivalent;
    return fa > fb ? Ordering::a_preferred : Ordering::b_preferred;
}

TelicState telic_state_of(const ExperienceDistribution& P, const Goal& g) {
    const double f = feature_probability(P, g.features);
    const int idx = g.bin_of(f);
    return TelicState{g.bin(idx).label, idx};
}

}  // namespace telic
