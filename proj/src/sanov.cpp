#include "telic/sanov.hpp"

#include <cmath>

#include "telic/errors.hpp"
#include "telic/rng.hpp"

namespace telic {

namespace {

struct SamplingPlan {
    std::vector<double> cdf;      // cumulative masses over the support
    std::vector<bool> in_phi;     // feature membership per support index
};

SamplingPlan make_plan(const ExperienceDistribution& Q, const Goal& g) {
    SamplingPlan plan;
    double acc = 0.0;
    const auto& support = Q.support();
    const auto& masses = Q.masses();
    plan.cdf.reserve(support.size());
    plan.in_phi.reserve(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        acc += masses[i];
        plan.cdf.push_back(acc);
        plan.in_phi.push_back(g.features.contains(support[i]));
    }
    plan.cdf.back() = 1.0;
    return plan;
}

/// One trial: draw n samples, count feature occurrences, and test whether the
/// empirical feature frequency lands in the bin.
bool run_trial(const SamplingPlan& plan, const Bin& bin, int n, std::uint64_t seed,
               std::uint64_t stream) {
    int feature_count = 0;
    for (int i = 0; i < n; ++i) {
        const double u = counter_uniform01(seed, stream, static_cast<std::uint64_t>(i));
        std::size_t idx = 0;
        while (idx + 1 < plan.cdf.size() && u >= plan.cdf[idx]) ++idx;
        if (plan.in_phi[idx]) ++feature_count;
    }
    return bin.contains(static_cast<double>(feature_count) / static_cast<double>(n));
}

SanovReport run(const ExperienceDistribution& Q, const Goal& g, const TelicState& state,
                const std::vector<int>& sample_sizes, std::int64_t trials, std::uint64_t seed,
                bool parallel) {
    if (trials <= 0) throw TelicError("sanov trials must be positive");
    const SamplingPlan plan = make_plan(Q, g);
    const Bin& bin = g.bin(state.bin_index);

    SanovReport report;
    report.telic_distance_nats = telic_distance(Q, g, state).in_nats();
    report.points.reserve(sample_sizes.size());

    for (std::size_t si = 0; si < sample_sizes.size(); ++si) {
        const int n = sample_sizes[si];
        if (n <= 0) throw TelicError("sanov sample size must be positive");
        std::int64_t hits = 0;
        if (parallel) {
#pragma omp parallel for reduction(+ : hits) schedule(static)
            for (std::int64_t t = 0; t < trials; ++t) {
                const std::uint64_t stream = (static_cast<std::uint64_t>(si) << 32) |
                                             static_cast<std::uint64_t>(t);
                if (run_trial(plan, bin, n, seed, stream)) ++hits;
            }
        } else {
            for (std::int64_t t = 0; t < trials; ++t) {
                const std::uint64_t stream = (static_cast<std::uint64_t>(si) << 32) |
                                             static_cast<std::uint64_t>(t);
                if (run_trial(plan, bin, n, seed, stream)) ++hits;
            }
        }
        SanovPoint point;
        point.n = n;
        point.hits = hits;
        point.trials = trials;
        point.valid = hits > 0;
        point.rate_estimate =
            point.valid
                ? -std::log(static_cast<double>(hits) / static_cast<double>(trials)) / n
                : 0.0;
        report.points.push_back(point);
    }
    return report;
}

}  // namespace

SanovReport sanov_rate_estimate(const ExperienceDistribution& Q, const Goal& g,
                                const TelicState& state, const std::vector<int>& sample_sizes,
                                std::int64_t trials, std::uint64_t seed) {
    return run(Q, g, state, sample_sizes, trials, seed, true);
}

SanovReport sanov_rate_estimate_serial(const ExperienceDistribution& Q, const Goal& g,
                                       const TelicState& state,
                                       const std::vector<int>& sample_sizes, std::int64_t trials,
                                       std::uint64_t seed) {
    return run(Q, g, state, sample_sizes, trials, seed, false);
}

double fit_decay_slope(const std::vector<SanovPoint>& points) {
    double wsum = 0.0, xbar = 0.0, ybar = 0.0;
    int used = 0;
    for (const SanovPoint& p : points) {
        if (!p.valid) continue;
        const double w = static_cast<double>(p.hits);
        const double f = static_cast<double>(p.hits) / static_cast<double>(p.trials);
        const double y = std::log(f) + 0.5 * std::log(static_cast<double>(p.n));
        wsum += w;
        xbar += w * p.n;
        ybar += w * y;
        ++used;
    }
    if (used < 2) throw TelicError("need at least two sample sizes with hits to fit a slope");
    xbar /= wsum;
    ybar /= wsum;
    double num = 0.0, den = 0.0;
    for (const SanovPoint& p : points) {
        if (!p.valid) continue;
        const double w = static_cast<double>(p.hits);
        const double f = static_cast<double>(p.hits) / static_cast<double>(p.trials);
        const double y = std::log(f) + 0.5 * std::log(static_cast<double>(p.n));
        num += w * (p.n - xbar) * (y - ybar);
        den += w * (p.n - xbar) * (p.n - xbar);
    }
    return -num / den;
}

}  // namespace telic
