#pragma once

#include <array>
#include <string>
#include <vector>

#include "telic/gaussian/nav.hpp"

namespace telic::gaussian {

/// One (mu, sigma) cell of a phase plot.
struct PolicyGridCell {
    double mu = 0.0;
    double sigma = 1.0;
    std::vector<double> delta_p;  ///< per region, task declaration order
    double complexity = 0.0;      ///< nats, relative to the task default policy
    int state_index = 0;          ///< into PhaseGrid::state_labels
};

/// Straight segment of an iso-line in (mu, sigma) coordinates.
struct ContourSegment {
    double mu0, sigma0, mu1, sigma1;
};

struct PhaseGrid {
    int resolution = 0;
    std::vector<std::string> region_labels;
    std::vector<std::string> state_labels;          ///< regions then S_0
    std::vector<PolicyGridCell> cells;              ///< row-major, sigma rows
    std::vector<ContourSegment> delta_contour;      ///< complexity == task delta
    std::vector<std::vector<ContourSegment>> state_boundaries;  ///< delta_p == epsilon, per region
};

/// Dense policy-space evaluation behind the phase plots: delta_p per region,
/// complexity, and state label per cell, plus the budget iso-contour and the
/// state boundaries extracted by marching squares. Cell evaluation is
/// embarrassingly parallel; assembly is by index, so results are identical
/// across thread counts.
PhaseGrid phase_plot_grid(const NavTask& task, double mu_lo, double mu_hi, double sigma_lo,
                          double sigma_hi, int resolution);

/// Serial reference implementation; must agree exactly with phase_plot_grid.
PhaseGrid phase_plot_grid_serial(const NavTask& task, double mu_lo, double mu_hi,
                                 double sigma_lo, double sigma_hi, int resolution);

}  // namespace telic::gaussian
