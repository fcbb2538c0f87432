#pragma once

// Test-only oracles, kept independent of the implementation paths they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "telic/distribution.hpp"
#include "telic/gaussian/nav.hpp"
#include "telic/goal.hpp"

namespace telic::test {

/// Brute-force I-projection: minimize KL(P||Q) over distributions on Q's
/// support (size 2 or 3) whose feature mass lies in [lo, hi]. The simplex is
/// swept in (s, split) coordinates: s = feature mass over a grid that
/// includes the interval endpoints, and an inner grid over the conditional
/// split inside whichever group has two members. Returns the minimum KL.
inline double brute_force_projection(const ExperienceDistribution& Q, const FeatureSet& phi,
                                     double lo, double hi, int outer = 10000, int inner = 2000) {
    const auto& support = Q.support();
    const auto& masses = Q.masses();
    std::vector<double> q_phi, q_not;
    for (std::size_t i = 0; i < support.size(); ++i) {
        (phi.contains(support[i]) ? q_phi : q_not).push_back(masses[i]);
    }
    const double s_lo = std::max(lo, 0.0);
    const double s_hi = std::min(hi, 1.0);
    if (s_lo > s_hi) return std::numeric_limits<double>::infinity();

    auto kl_groups = [](const std::vector<double>& p, const std::vector<double>& q) {
        double total = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] <= 0.0) continue;
            if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
            total += p[i] * std::log(p[i] / q[i]);
        }
        return total;
    };

    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a <= outer; ++a) {
        const double s = s_lo + (s_hi - s_lo) * a / outer;
        // split whichever side has two members; the other side is determined
        const bool split_phi = q_phi.size() == 2;
        const bool split_not = q_not.size() == 2;
        const int inner_steps = (split_phi || split_not) ? inner : 0;
        for (int b = 0; b <= inner_steps; ++b) {
            std::vector<double> p_phi(q_phi.size()), p_not(q_not.size());
            if (split_phi) {
                const double x = s * b / std::max(inner_steps, 1);
                p_phi = {x, s - x};
            } else if (!q_phi.empty()) {
                p_phi = {s};
            }
            if (split_not) {
                const double x = (1.0 - s) * b / std::max(inner_steps, 1);
                p_not = {x, (1.0 - s) - x};
            } else if (!q_not.empty()) {
                p_not = {1.0 - s};
            }
            if (split_phi && split_not) break;  // supports of size <= 3 only
            const double kl = kl_groups(p_phi, q_phi) + kl_groups(p_not, q_not);
            best = std::min(best, kl);
        }
    }
    return best;
}

/// Composite-Simpson KL between two Gaussians, integrating p log(p/q) over a
/// range wide enough for both densities.
inline double gaussian_kl_quadrature(double mu_p, double sg_p, double mu_q, double sg_q,
                                     int intervals = 40000) {
    const double lo = std::min(mu_p - 12.0 * sg_p, mu_q - 12.0 * sg_q);
    const double hi = std::max(mu_p + 12.0 * sg_p, mu_q + 12.0 * sg_q);
    const double h = (hi - lo) / intervals;
    auto integrand = [&](double x) {
        const double zp = (x - mu_p) / sg_p;
        const double zq = (x - mu_q) / sg_q;
        const double log_p = -0.5 * zp * zp - std::log(sg_p) - 0.5 * std::log(2.0 * M_PI);
        const double log_q = -0.5 * zq * zq - std::log(sg_q) - 0.5 * std::log(2.0 * M_PI);
        return std::exp(log_p) * (log_p - log_q);
    };
    double total = integrand(lo) + integrand(hi);
    for (int k = 1; k < intervals; ++k) {
        total += integrand(lo + k * h) * (k % 2 == 1 ? 4.0 : 2.0);
    }
    return total * h / 3.0;
}

/// Dense scan over the (mu, sigma) box: minimum complexity among cells
/// classifying into `label`. The projection oracle for Gaussian states.
inline double dense_projection_oracle(const gaussian::NavTask& task,
                                      const gaussian::GaussianPolicy& ref,
                                      const std::string& label, int res = 2000) {
    double best = std::numeric_limits<double>::infinity();
    const auto& box = task.box;
#pragma omp parallel for schedule(static) reduction(min : best)
    for (int i = 0; i < res; ++i) {
        const double sg = box.sigma_lo + (box.sigma_hi - box.sigma_lo) * i / (res - 1);
        for (int j = 0; j < res; ++j) {
            const double mu = box.mu_lo + (box.mu_hi - box.mu_lo) * j / (res - 1);
            const gaussian::GaussianPolicy p{mu, sg};
            if (gaussian::classify_policy(p, task) != label) continue;
            best = std::min(best, gaussian::kl_between(p, ref));
        }
    }
    return best;
}

/// The dual-goal navigation fixture used across the test suites: direct-mode
/// figure geometry, eps = 0.1, delta = 1 nat, default policy (0, 1).
inline gaussian::NavTask make_fig3_task(double right_center = 2.0) {
    gaussian::NavTask task;
    task.horizon = 30;
    task.scaling = gaussian::TimeScaling::direct;
    task.epsilon = 0.1;
    task.delta_nats = 1.0;
    task.default_policy = {0.0, 1.0};
    task.regions = {{"S_R", right_center, 0.175, 1.0}, {"S_L", -2.0, 0.175, -1.0}};
    task.validate();
    return task;
}

/// Deterministic xorshift for test instance generation.
struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed ^ 0x9E3779B97F4A7C15ull) {}
    double uniform() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

}  // namespace telic::test
