#pragma once

#include <map>
#include <vector>

#include "telic/experience.hpp"

namespace telic {

/// Finite-support probability measure over experiences.
///
/// Masses must be non-negative and sum to 1 within 1e-9; a total within 1e-6
/// is renormalized on construction, anything further off is rejected. Support
/// entries must be distinct. Instances are immutable after construction.
class ExperienceDistribution {
public:
    ExperienceDistribution(std::vector<Experience> support, std::vector<double> mass);

    static ExperienceDistribution point_mass(Experience h);

    const std::vector<Experience>& support() const { return support_; }
    const std::vector<double>& masses() const { return mass_; }
    std::size_t size() const { return support_.size(); }

    double mass_of(const Experience& h) const;
    /// Index of h in the support, or -1.
    int index_of(const Experience& h) const;

    bool operator==(const ExperienceDistribution& other) const;

private:
    std::vector<Experience> support_;
    std::vector<double> mass_;
    std::map<Experience, int> index_;
};

/// Total variation distance; supports need not match.
double total_variation(const ExperienceDistribution& a, const ExperienceDistribution& b);

}  // namespace telic
