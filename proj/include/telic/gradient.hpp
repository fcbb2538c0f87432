#pragma once

#include <functional>
#include <vector>

#include "telic/goal.hpp"
#include "telic/projection.hpp"

namespace telic {

/// Policy given by a parameter vector and a deterministic generator mapping
/// parameters to an experience distribution (a pushforward at fixed horizon).
struct ParametricPolicy {
    std::vector<double> theta;
    std::function<ExperienceDistribution(const std::vector<double>&)> generator;

    ExperienceDistribution distribution() const { return generator(theta); }
};

/// Objective of the gradient step: theta -> D_KL(P* || P_theta) with P* the
/// projection of the *current* P_theta onto the state (recomputed per
/// evaluation), i.e. the telic distance.
double gradient_objective(const ParametricPolicy& p, const Goal& g, const TelicState& state);

/// One step of theta' = theta - eta * grad, with a central finite-difference
/// gradient (step h on each component). Throws DivergentStartError when the
/// objective is non-finite at theta and GradientOverflowError when any
/// gradient component is non-finite.
ParametricPolicy policy_gradient_step(const ParametricPolicy& p, const Goal& g,
                                      const TelicState& state, double eta, double h = 1e-5);

/// The finite-difference gradient itself (exposed for consistency checks).
std::vector<double> finite_difference_gradient(const ParametricPolicy& p, const Goal& g,
                                               const TelicState& state, double h = 1e-5);

}  // namespace telic
