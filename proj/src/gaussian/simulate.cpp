#include "telic/gaussian/simulate.hpp"

#include "telic/errors.hpp"
#include "telic/rng.hpp"

namespace telic::gaussian {

namespace {

void rollout(const GaussianPolicy& p, const NavTask& task, std::uint64_t seed, int traj,
             TrajectorySet& out) {
    const int T = task.horizon;
    const std::size_t base = static_cast<std::size_t>(traj) * (T + 1);
    double x = 0.0;
    out.positions[base] = x;
    for (int t = 0; t < T; ++t) {
        const double z = counter_normal(seed, static_cast<std::uint64_t>(traj),
                                        static_cast<std::uint64_t>(t));
        x += p.mu + p.sigma * z;
        out.positions[base + static_cast<std::size_t>(t) + 1] = x;
    }
    int region = -1;
    for (std::size_t r = 0; r < task.regions.size(); ++r) {
        if (x >= task.regions[r].lo() && x <= task.regions[r].hi()) {
            region = static_cast<int>(r);
            break;
        }
    }
    out.terminal_region[static_cast<std::size_t>(traj)] = region;
}

TrajectorySet run(const GaussianPolicy& p, const NavTask& task, int count, std::uint64_t seed,
                  bool parallel) {
    p.validate();
    task.validate();
    if (count < 1) throw TelicError("trajectory count must be >= 1");
    TrajectorySet out;
    out.count = count;
    out.horizon = task.horizon;
    out.positions.resize(static_cast<std::size_t>(count) * (task.horizon + 1));
    out.terminal_region.resize(static_cast<std::size_t>(count));
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < count; ++i) rollout(p, task, seed, i, out);
    } else {
        for (int i = 0; i < count; ++i) rollout(p, task, seed, i, out);
    }
    return out;
}

}  // namespace

TrajectorySet simulate_trajectories(const GaussianPolicy& p, const NavTask& task, int count,
                                    std::uint64_t seed) {
    return run(p, task, count, seed, true);
}

TrajectorySet simulate_trajectories_serial(const GaussianPolicy& p, const NavTask& task,
                                           int count, std::uint64_t seed) {
    return run(p, task, count, seed, false);
}

}  // namespace telic::gaussian
