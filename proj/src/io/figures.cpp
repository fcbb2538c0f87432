#include "telic/io/figures.hpp"

#include <algorithm>
#include <cmath>

#include "telic/io/csv.hpp"
#include "telic/io/svg.hpp"

namespace telic::io {

using gaussian::GaussianPolicy;
using gaussian::NavTask;
using gaussian::PhaseGrid;
using gaussian::Region;
using gaussian::TrajectorySet;

std::string region_color(const NavTask& task, const std::string& label) {
    const Region& r = task.region(label);
    if (r.rank < 0.0) return "#d43a3a";
    double top = 0.0;
    for (const Region& other : task.regions) top = std::max(top, other.rank);
    if (r.rank >= top) return "#2a9d2a";
    return "#e8a020";
}

std::string render_trajectory_tiles(const NavTask& task,
                                    const std::vector<GaussianPolicy>& policies,
                                    const std::vector<TrajectorySet>& sets) {
    const int tiles = static_cast<int>(policies.size());
    const int cols = tiles <= 3 ? tiles : static_cast<int>(std::ceil(std::sqrt(tiles)));
    const int rows = (tiles + cols - 1) / cols;
    const double tile_w = 220.0, tile_h = 200.0, margin = 34.0;
    SvgCanvas svg(cols * (tile_w + margin) + margin, rows * (tile_h + margin) + margin);

    double x_extent = 1.0;
    for (const TrajectorySet& set : sets) {
        for (const double v : set.positions) x_extent = std::max(x_extent, std::abs(v));
    }
    for (const Region& r : task.regions) x_extent = std::max(x_extent, std::abs(r.hi()));
    x_extent *= 1.05;

    for (int k = 0; k < tiles; ++k) {
        const int row = k / cols, col = k % cols;
        PlotFrame frame;
        frame.x_lo = -x_extent;
        frame.x_hi = x_extent;
        frame.y_lo = 0.0;
        frame.y_hi = static_cast<double>(task.horizon);
        frame.px = margin + col * (tile_w + margin);
        frame.py = margin + row * (tile_h + margin);
        frame.pw = tile_w;
        frame.ph = tile_h;

        svg.rect(frame.px, frame.py, frame.pw, frame.ph, "#fafafa", "#888", 0.8);
        const TrajectorySet& set = sets[static_cast<std::size_t>(k)];
        for (int t = 0; t < set.count; ++t) {
            std::vector<std::pair<double, double>> pts;
            pts.reserve(static_cast<std::size_t>(set.horizon) + 1);
            for (int step = 0; step <= set.horizon; ++step) {
                // time runs downward: start at the top of the tile
                pts.emplace_back(frame.x(set.at(t, step)),
                                 frame.py + frame.ph * step / set.horizon);
            }
            const int reg = set.terminal_region[static_cast<std::size_t>(t)];
            const std::string color =
                reg < 0 ? "#bbbbbb"
                        : region_color(task, task.regions[static_cast<std::size_t>(reg)].label);
            svg.polyline(pts, color, 0.5);
        }
        for (const Region& r : task.regions) {
            const double y = frame.py + frame.ph;
            svg.line(frame.x(r.lo()), y, frame.x(r.hi()), y, region_color(task, r.label), 4.0);
        }
        svg.text(frame.px + 4, frame.py + 13,
                 "mu=" + format_double(policies[static_cast<std::size_t>(k)].mu) +
                     " sigma=" + format_double(policies[static_cast<std::size_t>(k)].sigma),
                 10.0);
    }
    return svg.finish();
}

std::string render_phase_panels(const std::vector<PhasePanel>& panels) {
    const int tiles = static_cast<int>(panels.size());
    const int cols = tiles >= 2 ? 2 : 1;
    const int rows = (tiles + cols - 1) / cols;
    const double tile_w = 300.0, tile_h = 240.0, margin = 46.0;
    SvgCanvas svg(cols * (tile_w + margin) + margin, rows * (tile_h + margin) + margin);

    for (int k = 0; k < tiles; ++k) {
        const PhasePanel& panel = panels[static_cast<std::size_t>(k)];
        const PhaseGrid& grid = *panel.grid;
        const NavTask& task = *panel.task;
        const int row = k / cols, col = k % cols;
        const int res = grid.resolution;

        const double mu_lo = grid.cells.front().mu, mu_hi = grid.cells.back().mu;
        const double sg_lo = grid.cells.front().sigma, sg_hi = grid.cells.back().sigma;
        PlotFrame frame{mu_lo, mu_hi, sg_lo, sg_hi, margin + col * (tile_w + margin),
                        margin + row * (tile_h + margin), tile_w, tile_h};

        const double cell_w = tile_w / (res - 1), cell_h = tile_h / (res - 1);
        for (int i = 0; i < res; ++i) {
            for (int j = 0; j < res; ++j) {
                const auto& cell = grid.cells[static_cast<std::size_t>(i) * res + j];
                // color by delta_p toward the top-ranked region
                const double v = cell.delta_p.empty() ? 0.0 : cell.delta_p.front();
                svg.rect(frame.x(cell.mu) - cell_w / 2, frame.y(cell.sigma) - cell_h / 2,
                         cell_w + 0.5, cell_h + 0.5, diverging_color(v * 3.0));
            }
        }
        for (std::size_t r = 0; r < grid.state_boundaries.size(); ++r) {
            const std::string color = region_color(task, grid.region_labels[r]);
            for (const auto& seg : grid.state_boundaries[r]) {
                svg.line(frame.x(seg.mu0), frame.y(seg.sigma0), frame.x(seg.mu1),
                         frame.y(seg.sigma1), color, 1.2, true);
            }
        }
        for (const auto& seg : grid.delta_contour) {
            svg.line(frame.x(seg.mu0), frame.y(seg.sigma0), frame.x(seg.mu1), frame.y(seg.sigma1),
                     "#555555", 1.2);
        }
        for (const PhaseMarker& m : panel.markers) {
            svg.circle(frame.x(m.mu), frame.y(m.sigma), 4.0, m.color, "#222");
            svg.text(frame.x(m.mu) + 6, frame.y(m.sigma) - 5, m.label, 9.0);
        }
        svg.rect(frame.px, frame.py, frame.pw, frame.ph, "none", "#444", 1.0);
        svg.text(frame.px, frame.py - 8, panel.title, 12.0);
        svg.text(frame.px + frame.pw / 2, frame.py + frame.ph + 16, "mu", 10.0, "#222", "middle");
        svg.text(frame.px - 10, frame.py + frame.ph / 2, "sigma", 10.0, "#222", "middle");
    }
    return svg.finish();
}

namespace {

struct CurveFrame {
    PlotFrame frame;
    SvgCanvas& svg;

    void axes(const std::string& x_label, const std::string& y_label) {
        svg.rect(frame.px, frame.py, frame.pw, frame.ph, "none", "#444", 1.0);
        svg.text(frame.px + frame.pw / 2, frame.py + frame.ph + 26, x_label, 11.0, "#222",
                 "middle");
        svg.text(frame.px - 34, frame.py + frame.ph / 2, y_label, 11.0, "#222", "middle");
        for (int k = 0; k <= 4; ++k) {
            const double fx = frame.x_lo + (frame.x_hi - frame.x_lo) * k / 4;
            const double fy = frame.y_lo + (frame.y_hi - frame.y_lo) * k / 4;
            svg.text(frame.x(fx), frame.py + frame.ph + 12, format_double(fx), 8.0, "#555",
                     "middle");
            svg.text(frame.px - 4, frame.y(fy) + 3, format_double(fy), 8.0, "#555", "end");
        }
    }
};

}  // namespace

std::string render_goal_curves(const NavTask& task,
                               const std::vector<gaussian::GoalComplexityCurve>& curves,
                               const std::string& title) {
    SvgCanvas svg(460, 360);
    double x_hi = 1e-9, y_lo = 0.0, y_hi = 1e-9;
    for (const auto& curve : curves) {
        for (const auto& p : curve.points) {
            x_hi = std::max(x_hi, p.budget_nats);
            y_hi = std::max(y_hi, p.max_delta_p);
            y_lo = std::min(y_lo, p.max_delta_p);
        }
    }
    CurveFrame cf{{0.0, x_hi * 1.02, y_lo - 0.02, y_hi * 1.1 + 0.02, 60, 40, 360, 270}, svg};
    cf.axes("policy complexity (nats)", "max delta_p");
    svg.text(60, 24, title, 12.0);

    svg.line(cf.frame.x(task.delta_nats), cf.frame.py, cf.frame.x(task.delta_nats),
             cf.frame.py + cf.frame.ph, "#999", 1.0, true);
    svg.line(cf.frame.px, cf.frame.y(task.epsilon), cf.frame.px + cf.frame.pw,
             cf.frame.y(task.epsilon), "#999", 1.0, true);

    for (const auto& curve : curves) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : curve.points) {
            pts.emplace_back(cf.frame.x(p.budget_nats), cf.frame.y(p.max_delta_p));
        }
        const std::string color = region_color(task, curve.state_label);
        svg.polyline(pts, color, 1.6);
        if (!pts.empty()) svg.text(pts.back().first + 4, pts.back().second, curve.state_label, 10.0, color);
    }
    return svg.finish();
}

std::string render_granularity_curves(
    const NavTask& task, const std::vector<gaussian::GranularityComplexityCurve>& curves,
    const std::string& title) {
    SvgCanvas svg(460, 360);
    double x_lo = 1e18, x_hi = -1e18, y_hi = 1e-9;
    for (const auto& curve : curves) {
        for (const auto& p : curve.points) {
            if (!p.present) continue;
            x_lo = std::min(x_lo, p.neg_log_epsilon);
            x_hi = std::max(x_hi, p.neg_log_epsilon);
            y_hi = std::max(y_hi, p.complexity_nats);
        }
    }
    if (x_lo > x_hi) {
        x_lo = 0.0;
        x_hi = 1.0;
    }
    CurveFrame cf{{x_lo - 0.05, x_hi + 0.05, 0.0, y_hi * 1.1 + 0.05, 60, 40, 360, 270}, svg};
    cf.axes("-log(epsilon)", "required complexity (nats)");
    svg.text(60, 24, title, 12.0);

    svg.line(cf.frame.px, cf.frame.y(task.delta_nats), cf.frame.px + cf.frame.pw,
             cf.frame.y(task.delta_nats), "#999", 1.0, true);
    svg.line(cf.frame.x(-std::log(task.epsilon)), cf.frame.py, cf.frame.x(-std::log(task.epsilon)),
             cf.frame.py + cf.frame.ph, "#999", 1.0, true);

    for (const auto& curve : curves) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : curve.points) {
            if (!p.present) continue;
            pts.emplace_back(cf.frame.x(p.neg_log_epsilon), cf.frame.y(p.complexity_nats));
        }
        const std::string color = region_color(task, curve.state_label);
        svg.polyline(pts, color, 1.6);
        if (!pts.empty()) svg.text(pts.back().first + 4, pts.back().second, curve.state_label, 10.0, color);
    }
    return svg.finish();
}

}  // namespace telic::io
