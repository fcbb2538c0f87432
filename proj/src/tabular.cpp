#include "telic/tabular.hpp"

#include <cmath>

#include "telic/errors.hpp"

namespace telic {

namespace {

void validate_table(const std::map<std::string, std::vector<double>>& table,
                    std::size_t expected_len, const char* what) {
    for (const auto& [key, probs] : table) {
        if (probs.size() != expected_len) {
            throw TelicError(std::string(what) + " row \"" + key + "\" has wrong arity");
        }
        double total = 0.0;
        for (double p : probs) {
            if (p < 0.0) throw TelicError(std::string(what) + " row \"" + key + "\" has negative probability");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-9) {
            throw TelicError(std::string(what) + " row \"" + key + "\" sums to " + std::to_string(total));
        }
    }
}

const std::vector<double>& lookup(const std::map<std::string, std::vector<double>>& table,
                                  const std::string& prefix) {
    auto it = table.find(prefix);
    if (it == table.end()) throw UnknownHistoryError(prefix);
    return it->second;
}

}  // namespace

void TabularPolicy::validate() const {
    validate_table(table, static_cast<std::size_t>(actions.size()), "policy");
}

const std::vector<double>& TabularPolicy::action_probs(const std::string& prefix) const {
    return lookup(table, prefix);
}

void TabularEnvironment::validate() const {
    if (horizon < 0) throw TelicError("environment horizon must be non-negative");
    validate_table(table, static_cast<std::size_t>(observations.size()), "environment");
}

const std::vector<double>& TabularEnvironment::obs_probs(const std::string& prefix) const {
    return lookup(table, prefix);
}

double trajectory_probability(const TabularPolicy& policy, const TabularEnvironment& env,
                              const Experience& h) {
    double prob = 1.0;
    std::string prefix;  // grows "o0" -> "o0,a1" -> "o0,a1,o0" -> ...
    for (const Step& s : h.steps) {
        const auto& op = env.obs_probs(prefix);
        prob *= op[static_cast<std::size_t>(s.obs)];
        if (!prefix.empty()) prefix += ',';
        prefix += env.observations.name(s.obs);
        const auto& ap = policy.action_probs(prefix);
        prob *= ap[static_cast<std::size_t>(s.act)];
        prefix += ',';
        prefix += env.actions.name(s.act);
    }
    return prob;
}

namespace {

void enumerate(const TabularPolicy& policy, const TabularEnvironment& env, int remaining,
               Experience& current, const std::string& prefix, double prob,
               std::vector<Experience>& support, std::vector<double>& mass) {
    if (remaining == 0) {
        support.push_back(current);
        mass.push_back(prob);
        return;
    }
    const auto& op = env.obs_probs(prefix);
    for (int o = 0; o < env.observations.size(); ++o) {
        const double po = op[static_cast<std::size_t>(o)];
        if (po <= 0.0) continue;
        std::string with_obs = prefix.empty() ? env.observations.name(o)
                                              : prefix + ',' + env.observations.name(o);
        const auto& ap = policy.action_probs(with_obs);
        for (int a = 0; a < env.actions.size(); ++a) {
            const double pa = ap[static_cast<std::size_t>(a)];
            if (pa <= 0.0) continue;
            current.steps.push_back({o, a});
            enumerate(policy, env, remaining - 1, current, with_obs + ',' + env.actions.name(a),
                      prob * po * pa, support, mass);
            current.steps.pop_back();
        }
    }
}

}  // namespace

ExperienceDistribution policy_pushforward(const TabularPolicy& policy,
                                          const TabularEnvironment& env, int n,
                                          std::uint64_t max_support) {
    if (n < 0) throw TelicError("pushforward length must be non-negative");
    const double bound = std::pow(static_cast<double>(env.observations.size()) *
                                      static_cast<double>(env.actions.size()),
                                  static_cast<double>(n));
    if (bound > static_cast<double>(max_support)) {
        throw EnumerationTooLargeError("enumeration too large: (|O|*|A|)^n = " +
                                       std::to_string(bound) + " exceeds cap " +
                                       std::to_string(max_support));
    }
    std::vector<Experience> support;
    std::vector<double> mass;
    Experience current;
    enumerate(policy, env, n, current, "", 1.0, support, mass);
    return ExperienceDistribution(std::move(support), std::move(mass));
}

ExperienceDistribution empirical_distribution(const std::vector<Experience>& samples) {
    if (samples.empty()) throw NoSamplesError();
    std::map<Experience, int> counts;
    for (const Experience& h : samples) counts[h]++;
    std::vector<Experience> support;
    std::vector<double> mass;
    const double n = static_cast<double>(samples.size());
    for (const auto& [h, c] : counts) {
        support.push_back(h);
        mass.push_back(static_cast<double>(c) / n);
    }
    return ExperienceDistribution(std::move(support), std::move(mass));
}

}  // namespace telic
