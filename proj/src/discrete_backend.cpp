#include "telic/discrete_backend.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "telic/errors.hpp"

namespace telic {

namespace {

/// Euclidean projection onto the probability simplex (sort-based).
void project_to_simplex(std::vector<double>& v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0, theta = 0.0;
    int rho = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        cumulative += u[i];
        const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
        if (u[i] - candidate > 0.0) {
            rho = static_cast<int>(i + 1);
            theta = candidate;
        }
    }
    (void)rho;
    double total = 0.0;
    for (double& x : v) {
        x = std::max(0.0, x - theta);
        total += x;
    }
    if (total > 0.0) {
        for (double& x : v) x /= total;
    }
}

double kl_vectors(const std::vector<double>& a, const std::vector<double>& b) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] <= 0.0) continue;
        if (b[i] <= 0.0) return std::numeric_limits<double>::infinity();
        total += a[i] * std::log(a[i] / b[i]);
    }
    return total < 0.0 && total > -1e-12 ? 0.0 : total;
}

}  // namespace

DiscreteBackend::DiscreteBackend(ExperienceDistribution base, Goal goal)
    : support_(base.support()), goal_(std::move(goal)), base_(base.masses()) {
    goal_.validate();
    in_phi_.reserve(support_.size());
    for (const Experience& h : support_) in_phi_.push_back(goal_.features.contains(h));
}

int DiscreteBackend::bin_index_of(const std::string& label) const {
    for (std::size_t i = 0; i < goal_.bins.size(); ++i) {
        if (goal_.bins[i].label == label) return static_cast<int>(i);
    }
    throw TelicError("no bin labeled " + label);
}

std::vector<TelicState> DiscreteBackend::states() const {
    std::vector<TelicState> out;
    out.reserve(goal_.bins.size());
    for (std::size_t i = 0; i < goal_.bins.size(); ++i) {
        out.push_back({goal_.bins[i].label, static_cast<int>(i)});
    }
    return out;
}

double DiscreteBackend::feature_mass(const BackendPoint& p) const {
    double f = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (in_phi_[i]) f += p[i];
    }
    return std::clamp(f, 0.0, 1.0);
}

TelicState DiscreteBackend::classify(const BackendPoint& p) const {
    const int idx = goal_.bin_of(feature_mass(p));
    return {goal_.bin(idx).label, idx};
}

BackendPoint DiscreteBackend::base_point() const { return base_; }

ExperienceDistribution DiscreteBackend::to_distribution(const BackendPoint& p) const {
    return ExperienceDistribution(support_, p);
}

BackendProjection DiscreteBackend::project(const BackendPoint& from, const TelicState& s) const {
    const int bin_idx = bin_index_of(s.label);
    const ProjectionResult res =
        information_projection(to_distribution(from), goal_, {s.label, bin_idx});
    BackendProjection out;
    out.divergence_nats = res.divergence.in_nats();
    out.note = res.note;
    if (!res.projected.has_value()) {
        out.attainable = false;
        out.target = from;
        return out;
    }
    out.target = res.projected->masses();
    return out;
}

double DiscreteBackend::complexity(const BackendPoint& a, const BackendPoint& b) const {
    return kl_vectors(a, b);
}

BackendPoint DiscreteBackend::interpolate(const BackendPoint& a, const BackendPoint& b,
                                          double t) const {
    BackendPoint out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - t) * a[i] + t * b[i];
    return out;
}

BackendPoint DiscreteBackend::constrained_improve(const BackendPoint& from, const TelicState& s,
                                                  double delta_nats) const {
    const int bin_idx = bin_index_of(s.label);
    const Bin& bin = goal_.bin(bin_idx);
    if (bin.contains(feature_mass(from))) return from;

    const double q = feature_mass(from);
    if ((bin.lo > 0.0 && q <= 0.0) || (bin.hi < 1.0 && q >= 1.0)) {
        // the interval may still be attainable from one side; only a true
        // support failure is fatal
        if ((bin.clamp(q) > 0.0 && q <= 0.0) || (bin.clamp(q) < 1.0 && q >= 1.0)) {
            throw TelicError("unreachable state: absolute continuity (" + s.label + ")");
        }
    }

    // Aim slightly inside the bin so finitely many descent steps can land in
    // the half-open interval rather than on its boundary.
    const double inset = std::min(bin.width() * 0.01, 1e-4);
    const double c_target = std::clamp(q, bin.lo + inset, bin.hi - inset);

    // Projected finite-difference descent with a soft budget penalty.
    const double budget = delta_nats * 0.999999;
    auto objective = [&](const BackendPoint& m) {
        const double dist = binary_kl(c_target, feature_mass(m));
        const double kl = kl_vectors(m, from);
        const double over = std::max(0.0, kl - budget);
        return dist + 1e3 * over * over;
    };

    BackendPoint m = from;
    double step = 0.05;
    double current = objective(m);
    const double h = 1e-7;
    for (int iter = 0; iter < 400 && step > 1e-12 && current > 1e-14; ++iter) {
        BackendPoint grad(m.size(), 0.0);
        BackendPoint probe = m;
        for (std::size_t i = 0; i < m.size(); ++i) {
            const double saved = probe[i];
            probe[i] = saved + h;
            const double up = objective(probe);
            probe[i] = std::max(0.0, saved - h);
            const double down = objective(probe);
            probe[i] = saved;
            grad[i] = (up - down) / (2.0 * h);
        }
        double norm = 0.0;
        for (const double g : grad) norm += g * g;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm)) break;

        bool improved = false;
        for (int bt = 0; bt < 20; ++bt) {
            BackendPoint trial = m;
            for (std::size_t i = 0; i < m.size(); ++i) trial[i] -= step / norm * grad[i];
            project_to_simplex(trial);
            const double value = objective(trial);
            if (value < current - 1e-15) {
                m = std::move(trial);
                current = value;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (improved) step *= 1.3;
    }

    // Hard feasibility: pull back along the mixture segment until the budget
    // holds exactly (the divergence along the segment is monotone).
    if (kl_vectors(m, from) > delta_nats) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (kl_vectors(interpolate(from, m, mid), from) <= delta_nats) lo = mid;
            else hi = mid;
        }
        m = interpolate(from, m, lo);
    }
    return m;
}

TelicState DiscreteBackend::insert_intermediate_state(const BackendPoint& midpoint,
                                                      double epsilon, const TelicState& target) {
    const double c = feature_mass(midpoint);
    const int target_idx = bin_index_of(target.label);
    const int host_idx = goal_.bin_of(c);
    const Bin host = goal_.bin(host_idx);
    if (host.label == target.label) {
        throw SplitCollapseError("midpoint already classifies into " + target.label);
    }

    constexpr double kTiny = 1e-9;
    double m_lo = std::max(host.lo, c - epsilon);
    double m_hi = std::min(host.hi, c + epsilon);
    if (m_lo - host.lo < kTiny) m_lo = host.lo;
    if (host.hi - m_hi < kTiny) m_hi = host.hi;
    if (m_lo <= host.lo && m_hi >= host.hi) {
        throw SplitCollapseError("epsilon neighborhood of f=" + std::to_string(c) +
                                 " covers the whole bin " + host.label);
    }

    std::string m_label = "S_M";
    auto label_taken = [&](const std::string& l) {
        return std::any_of(goal_.bins.begin(), goal_.bins.end(),
                           [&](const Bin& b) { return b.label == l; });
    };
    for (int suffix = 2; label_taken(m_label); ++suffix) {
        m_label = "S_M" + std::to_string(suffix);
    }

    const Bin& target_bin = goal_.bin(target_idx);
    const bool target_above = target_bin.lo >= host.hi - 1e-15;
    const double span = target_bin.rank - host.rank;

    std::vector<Bin> pieces;
    if (m_lo > host.lo) {
        Bin lower{host.lo, m_lo, "", 0.0, false};
        if (target_above) {  // far side keeps the host identity
            lower.label = host.label;
            lower.rank = host.rank;
        } else {
            lower.label = host.label + "_lo";
            lower.rank = host.rank + 2.0 * span / 3.0;
        }
        pieces.push_back(lower);
    }
    Bin middle{m_lo, m_hi, m_label, host.rank + span / 3.0, m_hi >= host.hi && host.closed_hi};
    pieces.push_back(middle);
    if (m_hi < host.hi) {
        Bin upper{m_hi, host.hi, "", 0.0, host.closed_hi};
        if (target_above) {
            upper.label = host.label + "_hi";
            upper.rank = host.rank + 2.0 * span / 3.0;
        } else {
            upper.label = host.label;
            upper.rank = host.rank;
        }
        pieces.push_back(upper);
    }
    for (Bin& b : pieces) {
        if (b.label != host.label && b.label != m_label && label_taken(b.label)) {
            int suffix = 2;
            std::string base = b.label;
            while (label_taken(b.label)) b.label = base + std::to_string(suffix++);
        }
    }

    std::vector<Bin> bins;
    for (int i = 0; i < static_cast<int>(goal_.bins.size()); ++i) {
        if (i == host_idx) {
            bins.insert(bins.end(), pieces.begin(), pieces.end());
        } else {
            bins.push_back(goal_.bins[static_cast<std::size_t>(i)]);
        }
    }
    std::sort(bins.begin(), bins.end(), [](const Bin& a, const Bin& b) { return a.lo < b.lo; });
    Goal updated = goal_;
    updated.bins = std::move(bins);
    updated.validate(false);  // fragments may be narrower than epsilon
    goal_ = std::move(updated);
    return {m_label, bin_index_of(m_label)};
}

std::unique_ptr<Backend> DiscreteBackend::clone() const {
    return std::make_unique<DiscreteBackend>(*this);
}

std::string DiscreteBackend::describe_point(const BackendPoint& p) const {
    std::ostringstream os;
    os << "f=" << feature_mass(p) << " masses=[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i > 0) os << ",";
        os << p[i];
    }
    os << "]";
    return os.str();
}

}  // namespace telic
