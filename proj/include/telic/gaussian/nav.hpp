#pragma once

#include <string>
#include <vector>

#include "telic/divergence.hpp"

namespace telic::gaussian {

/// Random-walk step policy: x_{t+1} = x_t + eta_t, eta_t ~ N(mu, sigma^2).
struct GaussianPolicy {
    double mu = 0.0;
    double sigma = 1.0;

    void validate() const;
    bool operator==(const GaussianPolicy&) const = default;
};

/// An interval of interest on the line, with a desirability rank. Rank 0 is
/// reserved for the default state S_0; positive ranks are desirable, negative
/// undesirable; larger is always preferred. Ranks are doubles so refinement
/// can insert a state between two existing ones.
struct Region {
    std::string label;
    double center = 0.0;
    double radius = 1.0;
    double rank = 1.0;

    double lo() const { return center - radius; }
    double hi() const { return center + radius; }
};

/// How plotted (mu, sigma) relate to the final-position distribution.
///  - accumulate: physical stepping; x_T ~ N(T mu, sqrt(T) sigma).
///  - direct: (mu, sigma) are read as the final-position parameters,
///    matching the geometry of the paper-style phase plots.
enum class TimeScaling { accumulate, direct };

struct SearchBox {
    double mu_lo = -3.0;
    double mu_hi = 3.0;
    double sigma_lo = 0.05;
    double sigma_hi = 3.0;
};

struct NavTask {
    int horizon = 30;
    std::vector<Region> regions;
    double epsilon = 0.1;
    GaussianPolicy default_policy{0.0, 1.0};
    double delta_nats = 1.0;
    TimeScaling scaling = TimeScaling::accumulate;
    SearchBox box;
    int grid_resolution = 400;
    double split_radius_scale = 1.5;

    void validate() const;
    const Region& region(const std::string& label) const;
    bool has_region(const std::string& label) const;
    /// State labels: regions by declaration order, then S_0.
    std::vector<std::string> state_labels() const;
};

inline constexpr const char* kDefaultStateLabel = "S_0";

struct FinalDistribution {
    double mean = 0.0;
    double std = 1.0;
};

/// Final-position law at time T from x_0 = 0.
FinalDistribution final_position_distribution(const GaussianPolicy& p, const NavTask& task);

/// P(x_T in region) via the error function.
double region_probability(const GaussianPolicy& p, const NavTask& task, const Region& r);

/// Probability of the target region minus the best competing region
/// (0 when there is no competitor).
double delta_p(const GaussianPolicy& p, const NavTask& task, const std::string& target_label);

/// Label of the unique region with delta_p >= epsilon, else S_0. Boundary is
/// inclusive; declaration order breaks (measure-zero) ties.
std::string classify_policy(const GaussianPolicy& p, const NavTask& task);

/// Per-step policy complexity: closed-form Gaussian KL
/// log(sigma_ref/sigma) + (sigma^2 + (mu - mu_ref)^2) / (2 sigma_ref^2) - 1/2.
DivergenceValue policy_complexity(const GaussianPolicy& p, const GaussianPolicy& ref,
                                  Base base = Base::nats);

/// KL(N(a) || N(b)) in nats; the step complexity of updating b -> a.
double kl_between(const GaussianPolicy& a, const GaussianPolicy& b);

}  // namespace telic::gaussian
