#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "telic/distribution.hpp"

namespace telic {

/// Deterministic membership test over experiences (the desired-property set).
class FeatureSet {
public:
    FeatureSet() = default;
    FeatureSet(std::string label, std::function<bool(const Experience&)> predicate)
        : label_(std::move(label)), predicate_(std::move(predicate)) {}

    static FeatureSet from_experiences(std::string label, std::vector<Experience> members);
    static FeatureSet everything();
    static FeatureSet nothing();

    bool contains(const Experience& h) const { return predicate_ && predicate_(h); }
    const std::string& label() const { return label_; }

private:
    std::string label_;
    std::function<bool(const Experience&)> predicate_;
};

/// Probability that an experience drawn from P has the feature.
double feature_probability(const ExperienceDistribution& P, const FeatureSet& phi);

/// One feature-probability interval. Bins are half-open [lo, hi) except the
/// last, which closes at 1 so the bins cover [0,1] exactly. `rank` orders
/// bins by desirability (strictly; higher is preferred) and is a double so
/// refinement can insert states between existing ranks.
struct Bin {
    double lo = 0.0;
    double hi = 1.0;
    std::string label;
    double rank = 0.0;
    bool closed_hi = false;

    bool contains(double f) const {
        return f >= lo && (f < hi || (closed_hi && f <= hi));
    }
    double width() const { return hi - lo; }
    /// Nearest point of the closure [lo, hi].
    double clamp(double f) const { return f < lo ? lo : (f > hi ? hi : f); }
};

/// A goal: a feature set, a discrimination sensitivity, and an ordered bin
/// structure over feature probability. The bins are the telic partition; the
/// pairwise epsilon-equivalence predicate is kept alongside (see prefers).
struct Goal {
    FeatureSet features;
    double epsilon = 0.0;
    std::vector<Bin> bins;

    void validate(bool enforce_min_width = true) const;
    int bin_of(double f) const;
    const Bin& bin(int index) const { return bins.at(static_cast<std::size_t>(index)); }
};

/// One equivalence class of the goal-induced partition.
struct TelicState {
    std::string label;
    int bin_index = -1;

    bool operator==(const TelicState& other) const { return label == other.label; }
    bool operator<(const TelicState& other) const { return label < other.label; }
};

enum class Ordering { a_preferred, b_preferred, equivalent };

/// Pairwise preference at sensitivity epsilon: equivalent iff the feature
/// probabilities differ by at most epsilon, else ordered by the difference.
Ordering prefers(const ExperienceDistribution& A, const ExperienceDistribution& B, const Goal& g);

/// The bin containing P's feature probability. Total by construction.
TelicState telic_state_of(const ExperienceDistribution& P, const Goal& g);

}  // namespace telic
