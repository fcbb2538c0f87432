#pragma once

#include "telic/backend.hpp"
#include "telic/distribution.hpp"
#include "telic/projection.hpp"

namespace telic {

/// Backend over finite-support experience distributions. Points are mass
/// vectors aligned with the base distribution's support: at horizon level any
/// point of the simplex is realizable as a policy pushforward, so the
/// interpolation space is distribution space and update complexity is the
/// plain KL between mass vectors. States are the goal's bins; state handles
/// are resolved by label so they stay valid across refinement inserts.
class DiscreteBackend : public Backend {
public:
    DiscreteBackend(ExperienceDistribution base, Goal goal);

    std::vector<TelicState> states() const override;
    TelicState classify(const BackendPoint& p) const override;
    BackendProjection project(const BackendPoint& from, const TelicState& s) const override;
    BackendPoint constrained_improve(const BackendPoint& from, const TelicState& s,
                                     double delta_nats) const override;
    double complexity(const BackendPoint& a, const BackendPoint& b) const override;
    BackendPoint interpolate(const BackendPoint& a, const BackendPoint& b,
                             double t) const override;
    TelicState insert_intermediate_state(const BackendPoint& midpoint, double epsilon,
                                         const TelicState& target) override;
    std::unique_ptr<Backend> clone() const override;
    std::string describe_point(const BackendPoint& p) const override;

    const Goal& goal() const { return goal_; }
    const std::vector<Experience>& support() const { return support_; }
    BackendPoint base_point() const;
    ExperienceDistribution to_distribution(const BackendPoint& p) const;
    double feature_mass(const BackendPoint& p) const;

private:
    int bin_index_of(const std::string& label) const;

    std::vector<Experience> support_;
    std::vector<bool> in_phi_;
    Goal goal_;
    BackendPoint base_;
};

}  // namespace telic
