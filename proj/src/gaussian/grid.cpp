#include "telic/gaussian/grid.hpp"

#include <cmath>

namespace telic::gaussian {

namespace {

/// Marching squares over a scalar field sampled on the grid; emits segments
/// of the iso-line field == level, cell by cell in row-major order.
std::vector<ContourSegment> march(const std::vector<double>& field, int res, double mu_lo,
                                  double mu_hi, double sg_lo, double sg_hi, double level) {
    std::vector<ContourSegment> segments;
    auto at = [&](int i, int j) { return field[static_cast<std::size_t>(i) * res + j]; };
    auto mu_of = [&](int j) { return mu_lo + (mu_hi - mu_lo) * j / (res - 1); };
    auto sg_of = [&](int i) { return sg_lo + (sg_hi - sg_lo) * i / (res - 1); };

    for (int i = 0; i + 1 < res; ++i) {
        for (int j = 0; j + 1 < res; ++j) {
            const double v00 = at(i, j), v01 = at(i, j + 1);
            const double v10 = at(i + 1, j), v11 = at(i + 1, j + 1);
            if (!std::isfinite(v00) || !std::isfinite(v01) || !std::isfinite(v10) ||
                !std::isfinite(v11)) {
                continue;
            }
            int mask = 0;
            if (v00 > level) mask |= 1;
            if (v01 > level) mask |= 2;
            if (v11 > level) mask |= 4;
            if (v10 > level) mask |= 8;
            if (mask == 0 || mask == 15) continue;

            auto lerp = [&](double a, double b) {
                const double d = b - a;
                return std::abs(d) < 1e-300 ? 0.5 : (level - a) / d;
            };
            // Edge midpoints: 0 bottom (i,j)-(i,j+1), 1 right, 2 top, 3 left.
            std::array<std::pair<double, double>, 4> pts;
            pts[0] = {mu_of(j) + lerp(v00, v01) * (mu_of(j + 1) - mu_of(j)), sg_of(i)};
            pts[1] = {mu_of(j + 1), sg_of(i) + lerp(v01, v11) * (sg_of(i + 1) - sg_of(i))};
            pts[2] = {mu_of(j) + lerp(v10, v11) * (mu_of(j + 1) - mu_of(j)), sg_of(i + 1)};
            pts[3] = {mu_of(j), sg_of(i) + lerp(v00, v10) * (sg_of(i + 1) - sg_of(i))};

            static constexpr int kEdges[16][4] = {
                {-1, -1, -1, -1}, {0, 3, -1, -1}, {0, 1, -1, -1}, {1, 3, -1, -1},
                {1, 2, -1, -1},   {0, 1, 2, 3},   {0, 2, -1, -1}, {2, 3, -1, -1},
                {2, 3, -1, -1},   {0, 2, -1, -1}, {0, 3, 1, 2},   {1, 2, -1, -1},
                {1, 3, -1, -1},   {0, 1, -1, -1}, {0, 3, -1, -1}, {-1, -1, -1, -1}};
            const int* e = kEdges[mask];
            for (int k = 0; k < 4 && e[k] >= 0; k += 2) {
                segments.push_back({pts[static_cast<std::size_t>(e[k])].first,
                                    pts[static_cast<std::size_t>(e[k])].second,
                                    pts[static_cast<std::size_t>(e[k + 1])].first,
                                    pts[static_cast<std::size_t>(e[k + 1])].second});
            }
        }
    }
    return segments;
}

PolicyGridCell eval_cell(const NavTask& task, double mu, double sg) {
    PolicyGridCell cell;
    cell.mu = mu;
    cell.sigma = sg;
    const GaussianPolicy p{mu, sg};
    cell.delta_p.reserve(task.regions.size());
    int state = static_cast<int>(task.regions.size());  // S_0 slot
    for (std::size_t r = 0; r < task.regions.size(); ++r) {
        const double dp = delta_p(p, task, task.regions[r].label);
        cell.delta_p.push_back(dp);
        if (state == static_cast<int>(task.regions.size()) && dp >= task.epsilon) {
            state = static_cast<int>(r);
        }
    }
    cell.state_index = state;
    cell.complexity = kl_between(p, task.default_policy);
    return cell;
}

PhaseGrid build(const NavTask& task, double mu_lo, double mu_hi, double sg_lo, double sg_hi,
                int res, bool parallel) {
    task.validate();
    PhaseGrid grid;
    grid.resolution = res;
    for (const Region& r : task.regions) grid.region_labels.push_back(r.label);
    grid.state_labels = grid.region_labels;
    grid.state_labels.push_back(kDefaultStateLabel);
    grid.cells.resize(static_cast<std::size_t>(res) * res);

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < res; ++i) {
            const double sg = sg_lo + (sg_hi - sg_lo) * i / (res - 1);
            for (int j = 0; j < res; ++j) {
                const double mu = mu_lo + (mu_hi - mu_lo) * j / (res - 1);
                grid.cells[static_cast<std::size_t>(i) * res + j] = eval_cell(task, mu, sg);
            }
        }
    } else {
        for (int i = 0; i < res; ++i) {
            const double sg = sg_lo + (sg_hi - sg_lo) * i / (res - 1);
            for (int j = 0; j < res; ++j) {
                const double mu = mu_lo + (mu_hi - mu_lo) * j / (res - 1);
                grid.cells[static_cast<std::size_t>(i) * res + j] = eval_cell(task, mu, sg);
            }
        }
    }

    std::vector<double> complexity(grid.cells.size());
    for (std::size_t k = 0; k < grid.cells.size(); ++k) complexity[k] = grid.cells[k].complexity;
    grid.delta_contour = march(complexity, res, mu_lo, mu_hi, sg_lo, sg_hi, task.delta_nats);

    grid.state_boundaries.resize(task.regions.size());
    std::vector<double> dp_field(grid.cells.size());
    for (std::size_t r = 0; r < task.regions.size(); ++r) {
        for (std::size_t k = 0; k < grid.cells.size(); ++k) dp_field[k] = grid.cells[k].delta_p[r];
        grid.state_boundaries[r] = march(dp_field, res, mu_lo, mu_hi, sg_lo, sg_hi, task.epsilon);
    }
    return grid;
}

}  // namespace

PhaseGrid phase_plot_grid(const NavTask& task, double mu_lo, double mu_hi, double sigma_lo,
                          double sigma_hi, int resolution) {
    return build(task, mu_lo, mu_hi, sigma_lo, sigma_hi, resolution, true);
}

PhaseGrid phase_plot_grid_serial(const NavTask& task, double mu_lo, double mu_hi,
                                 double sigma_lo, double sigma_hi, int resolution) {
    return build(task, mu_lo, mu_hi, sigma_lo, sigma_hi, resolution, false);
}

}  // namespace telic::gaussian
