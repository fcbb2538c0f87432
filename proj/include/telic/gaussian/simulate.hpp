#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "telic/gaussian/nav.hpp"

namespace telic::gaussian {

struct TrajectorySet {
    int count = 0;
    int horizon = 0;
    /// count x (horizon+1) positions, row-major; x_0 = 0 for every row.
    std::vector<double> positions;
    /// Region index (task declaration order) containing x_T, or -1.
    std::vector<int> terminal_region;

    double at(int traj, int t) const {
        return positions[static_cast<std::size_t>(traj) * (horizon + 1) + t];
    }
};

/// Random-walk rollouts of the step policy. Trajectory i draws its step noise
/// from counter stream i, so the parallel and serial paths produce identical
/// bytes and any subset of trajectories is reproducible in isolation.
TrajectorySet simulate_trajectories(const GaussianPolicy& p, const NavTask& task, int count,
                                    std::uint64_t seed);

/// Serial reference; bit-identical to simulate_trajectories.
TrajectorySet simulate_trajectories_serial(const GaussianPolicy& p, const NavTask& task,
                                           int count, std::uint64_t seed);

}  // namespace telic::gaussian
