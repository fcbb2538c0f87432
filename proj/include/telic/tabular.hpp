#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "telic/distribution.hpp"
#include "telic/experience.hpp"

namespace telic {

/// History-conditioned action distribution. Keys are exact history prefixes
/// ending with the current observation, e.g. "o0" or "o0,a1,o0"; the mapped
/// vector is a distribution over the action alphabet.
struct TabularPolicy {
    Alphabet observations;
    Alphabet actions;
    std::map<std::string, std::vector<double>> table;

    void validate() const;
    /// Action distribution after `prefix` (history up to and including the
    /// current observation). Throws UnknownHistoryError.
    const std::vector<double>& action_probs(const std::string& prefix) const;
};

/// History-conditioned observation distribution. Keys end with an action (or
/// are empty for the first observation).
struct TabularEnvironment {
    Alphabet observations;
    Alphabet actions;
    std::map<std::string, std::vector<double>> table;
    int horizon = 0;

    void validate() const;
    const std::vector<double>& obs_probs(const std::string& prefix) const;
};

/// Chain-rule probability of a full experience:
/// prod_i e(o_i | prefix) * pi(a_i | prefix, o_i). Empty experience -> 1.
double trajectory_probability(const TabularPolicy& policy, const TabularEnvironment& env,
                              const Experience& h);

/// Materialize P_pi over all length-n experiences by enumeration, pruning
/// zero-probability branches. Rejects instances whose a-priori support bound
/// (|O|*|A|)^n exceeds `max_support`.
ExperienceDistribution policy_pushforward(const TabularPolicy& policy,
                                          const TabularEnvironment& env, int n,
                                          std::uint64_t max_support = 1000000);

/// Empirical distribution of a sample list: mass(h) = count(h) / N.
ExperienceDistribution empirical_distribution(const std::vector<Experience>& samples);

}  // namespace telic
