#pragma once

#include <cstdint>
#include <vector>

#include "telic/goal.hpp"
#include "telic/projection.hpp"

namespace telic {

struct SanovPoint {
    int n = 0;                  ///< empirical sample size N
    std::int64_t hits = 0;      ///< trials whose empirical distribution landed in the state
    std::int64_t trials = 0;
    double rate_estimate = 0.0; ///< -(1/N) log(hits/trials), nats; valid only when hits > 0
    bool valid = false;         ///< false = zero hits, entry reported with a warning flag
};

struct SanovReport {
    std::vector<SanovPoint> points;
    double telic_distance_nats = 0.0;
};

/// Monte Carlo check of the Sanov decay rate: for each N, draw `trials`
/// empirical distributions of N i.i.d. samples from Q and count how often the
/// empirical distribution classifies into `state`. Deterministic in
/// (seed, trials, sample_sizes) regardless of thread count: trial t of the
/// i-th sample size uses counter stream (i << 32) | t.
SanovReport sanov_rate_estimate(const ExperienceDistribution& Q, const Goal& g,
                                const TelicState& state, const std::vector<int>& sample_sizes,
                                std::int64_t trials, std::uint64_t seed);

/// Serial reference of the same computation; must agree bit-for-bit.
SanovReport sanov_rate_estimate_serial(const ExperienceDistribution& Q, const Goal& g,
                                       const TelicState& state,
                                       const std::vector<int>& sample_sizes, std::int64_t trials,
                                       std::uint64_t seed);

/// Weighted least-squares decay slope from the valid points, fitting
/// log f = a - s N after removing the standard sqrt(N) large-deviation
/// prefactor (f ~ C exp(-sN)/sqrt(N)); weights are hit counts. Requires at
/// least two valid points.
double fit_decay_slope(const std::vector<SanovPoint>& points);

}  // namespace telic
