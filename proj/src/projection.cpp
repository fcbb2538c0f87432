#include "telic/projection.hpp"

#include <cmath>

#include "telic/errors.hpp"

namespace telic {

DivergenceValue kl_divergence(const ExperienceDistribution& P, const ExperienceDistribution& Q,
                              Base base) {
    double total = 0.0;
    const auto& support = P.support();
    const auto& masses = P.masses();
    for (std::size_t i = 0; i < support.size(); ++i) {
        const double p = masses[i];
        if (p <= 0.0) continue;
        const double q = Q.mass_of(support[i]);
        if (q <= 0.0) return DivergenceValue::infinity(base);
        total += p * std::log(p / q);
    }
    if (total < 0.0 && total > -1e-12) total = 0.0;
    return DivergenceValue::from_nats(total, base);
}

ProjectionResult information_projection(const ExperienceDistribution& Q, const Goal& g,
                                        const TelicState& state) {
    if (state.bin_index < 0 || state.bin_index >= static_cast<int>(g.bins.size())) {
        throw TelicError("telic state does not address a bin of this goal");
    }
    const Bin& bin = g.bin(state.bin_index);
    const double q = feature_probability(Q, g.features);

    ProjectionResult result;
    if (bin.contains(q)) {
        result.projected = Q;
        result.divergence = DivergenceValue::from_nats(0.0);
        result.target_feature_prob = q;
        return result;
    }
    // Nearest point of the bin's closure. The infimum over a half-open bin is
    // attained on the closure; downstream classification still uses the
    // half-open convention.
    const double c = bin.clamp(q);
    result.target_feature_prob = c;
    if ((c > 0.0 && q <= 0.0) || (c < 1.0 && q >= 1.0)) {
        result.divergence = DivergenceValue::infinity();
        result.note = "unreachable state: absolute continuity";
        return result;
    }
    result.divergence = DivergenceValue::from_nats(binary_kl(c, q));

    std::vector<Experience> support = Q.support();
    std::vector<double> mass(support.size(), 0.0);
    const auto& qmass = Q.masses();
    for (std::size_t i = 0; i < support.size(); ++i) {
        const bool in_phi = g.features.contains(support[i]);
        if (in_phi) {
            mass[i] = q > 0.0 ? qmass[i] * (c / q) : 0.0;
        } else {
            mass[i] = q < 1.0 ? qmass[i] * ((1.0 - c) / (1.0 - q)) : 0.0;
        }
    }
    result.projected = ExperienceDistribution(std::move(support), std::move(mass));
    return result;
}

DivergenceValue telic_distance(const ExperienceDistribution& Q, const Goal& g,
                               const TelicState& state, Base base) {
    return information_projection(Q, g, state).divergence.in(base);
}

}  // namespace telic
