#pragma once

#include "telic/backend.hpp"
#include "telic/gaussian/nav.hpp"
#include "telic/gaussian/search.hpp"

namespace telic::gaussian {

/// Backend over the Gaussian navigation task. Points are (mu, sigma); the
/// interpolation space is parameter space, so every midpoint on a split
/// segment is an actual policy (a mixture of Gaussian pushforwards need not
/// be). States are the Delta-P threshold regions plus S_0.
class NavBackend : public Backend {
public:
    explicit NavBackend(NavTask task);

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

    const NavTask& task() const { return task_; }
    static BackendPoint to_point(const GaussianPolicy& p) { return {p.mu, p.sigma}; }
    static GaussianPolicy to_policy(const BackendPoint& p);

private:
    NavTask task_;
};

}  // namespace telic::gaussian
