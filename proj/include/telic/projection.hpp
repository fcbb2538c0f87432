#pragma once

#include <optional>

#include "telic/divergence.hpp"
#include "telic/distribution.hpp"
#include "telic/goal.hpp"

namespace telic {

/// D_KL(P||Q) over P's support, with 0 log 0 = 0 and +infinity when P puts
/// mass where Q has none.
DivergenceValue kl_divergence(const ExperienceDistribution& P, const ExperienceDistribution& Q,
                              Base base = Base::nats);

struct ProjectionResult {
    /// Absent when the constraint is unattainable (absolute-continuity
    /// failure); divergence is +infinity in that case.
    std::optional<ExperienceDistribution> projected;
    DivergenceValue divergence;
    double target_feature_prob = 0.0;
    std::string note;
};

/// Information projection of Q onto one telic state (a feature-probability
/// interval constraint).
///
/// For the constraint P(Phi) = c the minimizer of D_KL(P||Q) keeps Q's
/// conditionals on Phi and its complement and only moves the split:
///   P*(h) = c Q(h|Phi)        for h in Phi,
///   P*(h) = (1-c) Q(h|Phi^c)  otherwise,
/// with divergence the binary KL d(c || Q(Phi)). Over an interval the optimal
/// c is the point of the bin's closure nearest to Q(Phi); if Q already lies
/// in the state the projection is Q itself and the divergence is 0.
ProjectionResult information_projection(const ExperienceDistribution& Q, const Goal& g,
                                        const TelicState& state);

/// Sanov rate of the state w.r.t. Q: the projection divergence. Zero iff Q
/// is in the state; +infinity propagates from unattainable constraints.
DivergenceValue telic_distance(const ExperienceDistribution& Q, const Goal& g,
                               const TelicState& state, Base base = Base::nats);

}  // namespace telic
