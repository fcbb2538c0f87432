#pragma once

#include <string>
#include <vector>

#include "telic/gaussian/curves.hpp"
#include "telic/gaussian/grid.hpp"
#include "telic/gaussian/simulate.hpp"

namespace telic::io {

/// Color assigned to a region for plots: greens for desirable ranks, reds for
/// undesirable, orange for intermediate (split-inserted) ranks.
std::string region_color(const gaussian::NavTask& task, const std::string& label);

/// Tile grid of random-walk rollouts, one tile per policy, trajectories
/// colored by terminal region.
std::string render_trajectory_tiles(const gaussian::NavTask& task,
                                    const std::vector<gaussian::GaussianPolicy>& policies,
                                    const std::vector<gaussian::TrajectorySet>& sets);

struct PhaseMarker {
    double mu = 0.0;
    double sigma = 1.0;
    std::string color;
    std::string label;
};

struct PhasePanel {
    std::string title;
    const gaussian::NavTask* task = nullptr;
    const gaussian::PhaseGrid* grid = nullptr;
    std::vector<PhaseMarker> markers;
};

/// Heat map of delta_p toward the top-ranked region with dashed state
/// boundaries, the budget iso-contour, and policy markers; panels tile 2-up.
std::string render_phase_panels(const std::vector<PhasePanel>& panels);

/// Fig-5 style: max delta_p per state against the complexity budget, with
/// dashed guides at the task delta and epsilon.
std::string render_goal_curves(const gaussian::NavTask& task,
                               const std::vector<gaussian::GoalComplexityCurve>& curves,
                               const std::string& title);

/// Fig-6 style: required complexity per state against -log(epsilon).
std::string render_granularity_curves(const gaussian::NavTask& task,
                                      const std::vector<gaussian::GranularityComplexityCurve>& curves,
                                      const std::string& title);

}  // namespace telic::io
