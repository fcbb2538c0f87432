#include "telic/distribution.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "telic/errors.hpp"

namespace telic {

namespace {
constexpr double kExactTol = 1e-9;
constexpr double kRenormTol = 1e-6;
}  // namespace

ExperienceDistribution::ExperienceDistribution(std::vector<Experience> support,
                                               std::vector<double> mass)
    : support_(std::move(support)), mass_(std::move(mass)) {
    if (support_.size() != mass_.size()) {
        throw TelicError("support and mass lists differ in length");
    }
    double total = 0.0;
    for (double& m : mass_) {
        if (m < 0.0) {
            if (m < -1e-12) throw TelicError("negative mass in distribution");
            m = 0.0;
        }
        total += m;
    }
    if (std::abs(total - 1.0) > kExactTol) {
        if (std::abs(total - 1.0) <= kRenormTol && total > 0.0) {
            for (double& m : mass_) m /= total;
        } else {
            throw TelicError("distribution mass sums to " + std::to_string(total));
        }
    }
    for (std::size_t i = 0; i < support_.size(); ++i) {
        auto [it, inserted] = index_.emplace(support_[i], static_cast<int>(i));
        if (!inserted) throw TelicError("duplicate experience in support");
    }
}

ExperienceDistribution ExperienceDistribution::point_mass(Experience h) {
    return ExperienceDistribution({std::move(h)}, {1.0});
}

double ExperienceDistribution::mass_of(const Experience& h) const {
    auto it = index_.find(h);
    return it == index_.end() ? 0.0 : mass_[static_cast<std::size_t>(it->second)];
}

int ExperienceDistribution::index_of(const Experience& h) const {
    auto it = index_.find(h);
    return it == index_.end() ? -1 : it->second;
}

bool ExperienceDistribution::operator==(const ExperienceDistribution& other) const {
    if (support_.size() != other.support_.size()) return false;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (other.mass_of(support_[i]) != mass_[i]) return false;
    }
    return true;
}

double total_variation(const ExperienceDistribution& a, const ExperienceDistribution& b) {
    std::set<Experience> keys(a.support().begin(), a.support().end());
    keys.insert(b.support().begin(), b.support().end());
    double sum = 0.0;
    for (const Experience& h : keys) sum += std::abs(a.mass_of(h) - b.mass_of(h));
    return 0.5 * sum;
}

}  // namespace telic
