#include "telic/gaussian/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "telic/errors.hpp"

namespace telic::gaussian {

namespace {

constexpr double kGolden = 0.6180339887498949;

struct Candidate {
    GaussianPolicy policy;
    double score = std::numeric_limits<double>::infinity();  // context-dependent
    bool valid = false;
};

/// Largest ray parameter t such that ref + t*dir stays inside the box.
double ray_box_limit(const SearchBox& box, const GaussianPolicy& ref, double dmu, double dsg) {
    double t = std::numeric_limits<double>::infinity();
    auto clip = [&t](double d, double lo, double hi, double x) {
        if (d > 0.0) t = std::min(t, (hi - x) / d);
        else if (d < 0.0) t = std::min(t, (lo - x) / d);
    };
    clip(dmu, box.mu_lo, box.mu_hi, ref.mu);
    clip(dsg, box.sigma_lo, box.sigma_hi, ref.sigma);
    return std::max(t, 0.0);
}

/// Min-complexity grid sweep restricted to cells classifying into `label`.
Candidate grid_min_complexity(const GaussianPolicy& ref, const std::string& label,
                              const NavTask& task, double mu_lo, double mu_hi, double sg_lo,
                              double sg_hi, int res) {
    sg_lo = std::max(sg_lo, 1e-6);
    std::vector<Candidate> row_best(static_cast<std::size_t>(res));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < res; ++i) {
        Candidate best;
        const double sg = sg_lo + (sg_hi - sg_lo) * i / (res - 1);
        for (int j = 0; j < res; ++j) {
            const double mu = mu_lo + (mu_hi - mu_lo) * j / (res - 1);
            const GaussianPolicy p{mu, sg};
            if (classify_policy(p, task) != label) continue;
            const double c = kl_between(p, ref);
            if (c < best.score) best = {p, c, true};
        }
        row_best[static_cast<std::size_t>(i)] = best;
    }
    Candidate best;
    for (const Candidate& c : row_best) {
        if (c.valid && c.score < best.score) best = c;
    }
    return best;
}

/// Boundary point of the state along the segment ref -> inside (bisection on
/// the classification flip); returns the in-state end.
GaussianPolicy bisect_to_boundary(const GaussianPolicy& ref, const GaussianPolicy& inside,
                                  const std::string& label, const NavTask& task) {
    double lo = 0.0, hi = 1.0;  // ref at t=0 (outside), inside at t=1
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const GaussianPolicy p{ref.mu + mid * (inside.mu - ref.mu),
                               ref.sigma + mid * (inside.sigma - ref.sigma)};
        if (classify_policy(p, task) == label) hi = mid;
        else lo = mid;
    }
    return {ref.mu + hi * (inside.mu - ref.mu), ref.sigma + hi * (inside.sigma - ref.sigma)};
}

/// First in-state point marching along a ray from ref, then pulled back to
/// the boundary. Invalid when the ray never enters the state inside the box.
Candidate boundary_along_ray(const GaussianPolicy& ref, double angle, const std::string& label,
                             const NavTask& task) {
    const double dmu = std::cos(angle), dsg = std::sin(angle);
    const double tmax = ray_box_limit(task.box, ref, dmu, dsg);
    if (tmax <= 0.0) return {};
    constexpr int kMarchSteps = 240;
    for (int k = 1; k <= kMarchSteps; ++k) {
        const double t = tmax * k / kMarchSteps;
        const GaussianPolicy p{ref.mu + t * dmu, ref.sigma + t * dsg};
        if (classify_policy(p, task) == label) {
            const GaussianPolicy b = bisect_to_boundary(ref, p, label, task);
            return {b, kl_between(b, ref), true};
        }
    }
    return {};
}

}  // namespace

ProjectionToState project_policy_to_state(const GaussianPolicy& ref, const std::string& label,
                                          const NavTask& task) {
    ref.validate();
    if (classify_policy(ref, task) == label) {
        return {ref, DivergenceValue::from_nats(0.0)};
    }
    const SearchBox& box = task.box;
    Candidate best = grid_min_complexity(ref, label, task, box.mu_lo, box.mu_hi, box.sigma_lo,
                                         box.sigma_hi, task.grid_resolution);
    if (!best.valid) throw StateNotFoundError(label);

    // Zoomed local grids around the coarse argmin.
    double wmu = (box.mu_hi - box.mu_lo) / task.grid_resolution * 4.0;
    double wsg = (box.sigma_hi - box.sigma_lo) / task.grid_resolution * 4.0;
    for (int round = 0; round < 3; ++round) {
        const Candidate z = grid_min_complexity(
            ref, label, task, std::max(box.mu_lo, best.policy.mu - wmu),
            std::min(box.mu_hi, best.policy.mu + wmu),
            std::max(box.sigma_lo, best.policy.sigma - wsg),
            std::min(box.sigma_hi, best.policy.sigma + wsg), 41);
        if (z.valid && z.score < best.score) best = z;
        wmu /= 5.0;
        wsg /= 5.0;
    }

    // Golden-section over the ray angle; the minimizer of a convex complexity
    // over a region not containing ref sits on the active boundary.
    const double base_angle =
        std::atan2(best.policy.sigma - ref.sigma, best.policy.mu - ref.mu);
    double a = base_angle - 0.5, b = base_angle + 0.5;
    auto eval = [&](double angle) {
        const Candidate c = boundary_along_ray(ref, angle, label, task);
        return c.valid ? std::make_pair(c.score, c.policy)
                       : std::make_pair(std::numeric_limits<double>::infinity(), ref);
    };
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    auto [f1, p1] = eval(x1);
    auto [f2, p2] = eval(x2);
    for (int it = 0; it < 40; ++it) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1; p2 = p1;
            x1 = b - kGolden * (b - a);
            std::tie(f1, p1) = eval(x1);
        } else {
            a = x1; x1 = x2; f1 = f2; p1 = p2;
            x2 = a + kGolden * (b - a);
            std::tie(f2, p2) = eval(x2);
        }
    }
    if (f1 < best.score && classify_policy(p1, task) == label) best = {p1, f1, true};
    if (f2 < best.score && classify_policy(p2, task) == label) best = {p2, f2, true};
    return {best.policy, DivergenceValue::from_nats(best.score)};
}

GaussianPolicy nearest_policy_within_budget(const GaussianPolicy& ref, const std::string& label,
                                            const NavTask& task, double delta_nats) {
    ref.validate();
    task.region(label);  // validates the label
    if (delta_nats <= 0.0) return ref;

    const SearchBox& box = task.box;
    const int res = task.grid_resolution;
    struct Best {
        double dp = -std::numeric_limits<double>::infinity();
        GaussianPolicy p;
    };
    std::vector<Best> rows(static_cast<std::size_t>(res));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < res; ++i) {
        Best best;
        const double sg = box.sigma_lo + (box.sigma_hi - box.sigma_lo) * i / (res - 1);
        for (int j = 0; j < res; ++j) {
            const double mu = box.mu_lo + (box.mu_hi - box.mu_lo) * j / (res - 1);
            const GaussianPolicy p{mu, sg};
            if (kl_between(p, ref) > delta_nats) continue;
            const double dp = delta_p(p, task, label);
            if (dp > best.dp) best = {dp, p};
        }
        rows[static_cast<std::size_t>(i)] = best;
    }
    Best best{-std::numeric_limits<double>::infinity(), ref};
    for (const Best& b : rows) {
        if (b.dp > best.dp) best = b;
    }
    if (delta_p(ref, task, label) > best.dp) best = {delta_p(ref, task, label), ref};

    // Refine along the budget contour. The feasible set {C <= delta} is
    // convex with its minimum at ref, so complexity is increasing along rays
    // from ref and the contour radius is a plain bisection per angle.
    auto contour_point = [&](double angle) -> Candidate {
        const double dmu = std::cos(angle), dsg = std::sin(angle);
        const double tmax = ray_box_limit(box, ref, dmu, dsg);
        if (tmax <= 0.0) return {};
        auto comp = [&](double t) {
            return kl_between({ref.mu + t * dmu, ref.sigma + t * dsg}, ref);
        };
        double lo = 0.0, hi = tmax;
        if (comp(tmax) <= delta_nats) {
            // contour exits the box along this ray; use the box edge
            return {{ref.mu + tmax * dmu, ref.sigma + tmax * dsg}, 0.0, true};
        }
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (comp(mid) <= delta_nats) lo = mid;
            else hi = mid;
        }
        return {{ref.mu + lo * dmu, ref.sigma + lo * dsg}, 0.0, true};
    };
    constexpr int kAngles = 256;
    double best_angle = 0.0;
    double best_contour_dp = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < kAngles; ++k) {
        const double angle = -M_PI + 2.0 * M_PI * k / kAngles;
        const Candidate c = contour_point(angle);
        if (!c.valid) continue;
        const double dp = delta_p(c.policy, task, label);
        if (dp > best_contour_dp) {
            best_contour_dp = dp;
            best_angle = angle;
        }
    }
    double a = best_angle - 2.0 * M_PI / kAngles, b = best_angle + 2.0 * M_PI / kAngles;
    auto eval = [&](double angle) {
        const Candidate c = contour_point(angle);
        return c.valid ? std::make_pair(delta_p(c.policy, task, label), c.policy)
                       : std::make_pair(-std::numeric_limits<double>::infinity(), ref);
    };
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    auto [f1, p1] = eval(x1);
    auto [f2, p2] = eval(x2);
    for (int it = 0; it < 40; ++it) {
        if (f1 >= f2) {
            b = x2; x2 = x1; f2 = f1; p2 = p1;
            x1 = b - kGolden * (b - a);
            std::tie(f1, p1) = eval(x1);
        } else {
            a = x1; x1 = x2; f1 = f2; p1 = p2;
            x2 = a + kGolden * (b - a);
            std::tie(f2, p2) = eval(x2);
        }
    }
    for (const auto& [dp, p] : {std::make_pair(f1, p1), std::make_pair(f2, p2)}) {
        if (dp > best.dp && kl_between(p, ref) <= delta_nats + 1e-12) best = {dp, p};
    }
    return best.p;
}

GaussianPolicy nearest_policy_to_state(const GaussianPolicy& ref, const std::string& label,
                                       const NavTask& task, double delta_nats) {
    ref.validate();
    if (classify_policy(ref, task) == label) return ref;
    if (delta_nats <= 0.0) return ref;
    const SearchBox& box = task.box;
    const int res = task.grid_resolution;

    // Boundary cells of the state: in-state cells with an out-of-state
    // neighbor, thinned to keep the inner minimum cheap.
    std::vector<std::uint8_t> inside(static_cast<std::size_t>(res) * res, 0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < res; ++i) {
        const double sg = box.sigma_lo + (box.sigma_hi - box.sigma_lo) * i / (res - 1);
        for (int j = 0; j < res; ++j) {
            const double mu = box.mu_lo + (box.mu_hi - box.mu_lo) * j / (res - 1);
            inside[static_cast<std::size_t>(i) * res + j] =
                classify_policy({mu, sg}, task) == label ? 1 : 0;
        }
    }
    std::vector<GaussianPolicy> boundary;
    for (int i = 0; i < res; ++i) {
        for (int j = 0; j < res; ++j) {
            if (!inside[static_cast<std::size_t>(i) * res + j]) continue;
            const bool edge = i == 0 || i == res - 1 || j == 0 || j == res - 1 ||
                              !inside[static_cast<std::size_t>(i - 1) * res + j] ||
                              !inside[static_cast<std::size_t>(i + 1) * res + j] ||
                              !inside[static_cast<std::size_t>(i) * res + j - 1] ||
                              !inside[static_cast<std::size_t>(i) * res + j + 1];
            if (edge) {
                boundary.push_back({box.mu_lo + (box.mu_hi - box.mu_lo) * j / (res - 1),
                                    box.sigma_lo + (box.sigma_hi - box.sigma_lo) * i / (res - 1)});
            }
        }
    }
    if (boundary.empty()) throw StateNotFoundError(label);
    if (boundary.size() > 512) {
        std::vector<GaussianPolicy> thinned;
        const std::size_t stride = boundary.size() / 512 + 1;
        for (std::size_t k = 0; k < boundary.size(); k += stride) thinned.push_back(boundary[k]);
        boundary = std::move(thinned);
    }
    auto distance_to_state = [&](const GaussianPolicy& p) {
        double best = std::numeric_limits<double>::infinity();
        for (const GaussianPolicy& b : boundary) best = std::min(best, kl_between(b, p));
        return best;
    };

    // Walk the budget contour (complexity is increasing along rays from ref).
    auto contour_point = [&](double angle) -> Candidate {
        const double dmu = std::cos(angle), dsg = std::sin(angle);
        const double tmax = ray_box_limit(box, ref, dmu, dsg);
        if (tmax <= 0.0) return {};
        auto comp = [&](double t) {
            return kl_between({ref.mu + t * dmu, ref.sigma + t * dsg}, ref);
        };
        double lo = 0.0, hi = tmax;
        if (comp(tmax) <= delta_nats) {
            return {{ref.mu + tmax * dmu, ref.sigma + tmax * dsg}, 0.0, true};
        }
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (comp(mid) <= delta_nats) lo = mid;
            else hi = mid;
        }
        return {{ref.mu + lo * dmu, ref.sigma + lo * dsg}, 0.0, true};
    };

    constexpr int kAngles = 256;
    GaussianPolicy best = ref;
    double best_distance = distance_to_state(ref);
    double best_angle = 0.0;
    bool have_angle = false;
    for (int k = 0; k < kAngles; ++k) {
        const double angle = -M_PI + 2.0 * M_PI * k / kAngles;
        const Candidate c = contour_point(angle);
        if (!c.valid) continue;
        const double d = distance_to_state(c.policy);
        if (d < best_distance) {
            best_distance = d;
            best = c.policy;
            best_angle = angle;
            have_angle = true;
        }
    }
    if (have_angle) {
        double a = best_angle - 2.0 * M_PI / kAngles, b = best_angle + 2.0 * M_PI / kAngles;
        auto eval = [&](double angle) {
            const Candidate c = contour_point(angle);
            return c.valid ? std::make_pair(distance_to_state(c.policy), c.policy)
                           : std::make_pair(std::numeric_limits<double>::infinity(), ref);
        };
        double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
        auto [f1, p1] = eval(x1);
        auto [f2, p2] = eval(x2);
        for (int it = 0; it < 40; ++it) {
            if (f1 <= f2) {
                b = x2; x2 = x1; f2 = f1; p2 = p1;
                x1 = b - kGolden * (b - a);
                std::tie(f1, p1) = eval(x1);
            } else {
                a = x1; x1 = x2; f1 = f2; p1 = p2;
                x2 = a + kGolden * (b - a);
                std::tie(f2, p2) = eval(x2);
            }
        }
        for (const auto& [d, p] : {std::make_pair(f1, p1), std::make_pair(f2, p2)}) {
            if (d < best_distance && kl_between(p, ref) <= delta_nats + 1e-12) {
                best_distance = d;
                best = p;
            }
        }
    }
    return best;
}

NavTask insert_intermediate_region(const NavTask& task, double center,
                                   const std::string& target_label, std::string new_label) {
    const Region& target = task.region(target_label);
    Region m;
    m.center = center;
    m.radius = target.radius * task.split_radius_scale;

    if (new_label.empty()) {
        new_label = "S_M";
        for (int suffix = 2; task.has_region(new_label); ++suffix) {
            new_label = "S_M" + std::to_string(suffix);
        }
    } else if (task.has_region(new_label)) {
        throw SplitCollapseError("label " + new_label + " already exists");
    }
    m.label = new_label;

    // Rank strictly between S_0 (rank 0) and the target.
    if (target.rank > 0.0) {
        double below = 0.0;
        for (const Region& r : task.regions) {
            if (r.rank < target.rank) below = std::max(below, r.rank);
        }
        m.rank = 0.5 * (below + target.rank);
    } else {
        double above = 0.0;
        for (const Region& r : task.regions) {
            if (r.rank > target.rank) above = std::min(above, r.rank);
        }
        m.rank = 0.5 * (above + target.rank);
    }

    for (const Region& r : task.regions) {
        if (m.lo() < r.hi() && r.lo() < m.hi()) {
            throw SplitCollisionError("inserted region [" + std::to_string(m.lo()) + "," +
                                      std::to_string(m.hi()) + "] overlaps " + r.label);
        }
    }

    NavTask out = task;
    out.regions.push_back(m);
    std::sort(out.regions.begin(), out.regions.end(),
              [](const Region& a, const Region& b) { return a.rank > b.rank; });
    out.validate();
    return out;
}

NavTask split_state_gaussian(const NavTask& task, const std::string& label) {
    const ProjectionToState proj = project_policy_to_state(task.default_policy, label, task);
    if (proj.complexity.in_nats() <= task.delta_nats) {
        throw NoSplitNeededError(label);
    }
    const GaussianPolicy pi_m =
        nearest_policy_within_budget(task.default_policy, label, task, task.delta_nats);
    const double center = final_position_distribution(pi_m, task).mean;
    return insert_intermediate_region(task, center, label);
}

}  // namespace telic::gaussian
