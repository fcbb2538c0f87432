#include "telic/io/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "telic/gaussian/backend.hpp"
#include "telic/gaussian/curves.hpp"
#include "telic/gaussian/grid.hpp"
#include "telic/gaussian/search.hpp"
#include "telic/gaussian/simulate.hpp"
#include "telic/io/csv.hpp"
#include "telic/io/figures.hpp"
#include "telic/io/reports.hpp"
#include "telic/refinement.hpp"
#include "telic/sanov.hpp"
#include "telic/version.hpp"

namespace telic::io {

using gaussian::GaussianPolicy;
using gaussian::NavBackend;
using gaussian::NavTask;
using nlohmann::json;

void RunContext::emit(const std::string& filename, const std::string& content) {
    std::filesystem::create_directories(out_dir);
    write_file_atomic((std::filesystem::path(out_dir) / filename).string(), content);
    emitted.push_back(filename);
}

std::string RunContext::provenance(const std::string& command) const {
    return "telic_version=" + std::string(kVersion) + " command=" + command +
           " config_hash=" + hash + " seed=" + std::to_string(seed) +
           " base=" + to_string(base);
}

RunContext make_context(ExperimentConfig config, const std::string& out_dir,
                        std::uint64_t seed_override, bool has_seed_override,
                        const char* base_override) {
    RunContext ctx;
    ctx.out_dir = out_dir;
    ctx.seed = has_seed_override ? seed_override : config.seed.value_or(0);
    if (base_override != nullptr) {
        ctx.base = std::string(base_override) == "bits" ? Base::bits : Base::nats;
    } else {
        ctx.base = config.base.value_or(Base::nats);
    }
    ctx.hash = config_hash(config.raw);
    ctx.config = std::move(config);
    return ctx;
}

namespace {

const NavTask& require_task(const RunContext& ctx, const char* command) {
    if (!ctx.config.task.has_value()) {
        throw ConfigError(std::string(command) + " requires a \"task\" section");
    }
    return *ctx.config.task;
}

const DiscreteInstance& require_discrete(const RunContext& ctx, const char* command) {
    if (!ctx.config.discrete.has_value()) {
        throw ConfigError(std::string(command) + " requires a \"discrete\" section");
    }
    return *ctx.config.discrete;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    return seed + 0x9E3779B97F4A7C15ull * (salt + 1);
}

std::string region_label_of(const NavTask& task, int index) {
    return index < 0 ? std::string() : task.regions[static_cast<std::size_t>(index)].label;
}

GaussianPolicy resolve_pi_m(const NavTask& task, const std::string& target_label) {
    std::string label = target_label;
    if (label.empty()) {
        double top = -1e300;
        for (const gaussian::Region& r : task.regions) {
            if (r.rank > top) {
                top = r.rank;
                label = r.label;
            }
        }
    }
    return gaussian::nearest_policy_within_budget(task.default_policy, label, task,
                                                  task.delta_nats);
}

}  // namespace

int cmd_simulate(RunContext& ctx) {
    const NavTask& task = require_task(ctx, "simulate");
    if (!ctx.config.simulate.has_value()) throw ConfigError("missing \"simulate\" section");
    const SimulateConfig& sim = *ctx.config.simulate;

    std::vector<gaussian::TrajectorySet> sets;
    sets.reserve(sim.policies.size());
    for (std::size_t k = 0; k < sim.policies.size(); ++k) {
        sets.push_back(gaussian::simulate_trajectories(sim.policies[k], task, sim.count,
                                                       mix_seed(ctx.seed, k)));
    }

    CsvWriter csv;
    csv.comment(ctx.provenance("simulate"));
    csv.comment("task=" + task_to_json(task).dump());
    std::vector<std::string> header{"policy_index", "mu", "sigma", "trajectory",
                                    "terminal_region"};
    for (int t = 0; t <= task.horizon; ++t) header.push_back("x" + std::to_string(t));
    csv.header(header);
    for (std::size_t k = 0; k < sim.policies.size(); ++k) {
        const gaussian::TrajectorySet& set = sets[k];
        for (int i = 0; i < set.count; ++i) {
            std::vector<std::string> row{std::to_string(k), format_double(sim.policies[k].mu),
                                         format_double(sim.policies[k].sigma), std::to_string(i),
                                         region_label_of(task, set.terminal_region[i])};
            for (int t = 0; t <= set.horizon; ++t) row.push_back(format_double(set.at(i, t)));
            csv.row(row);
        }
    }
    ctx.emit("trajectories.csv", csv.str());
    ctx.emit("simulate.svg", render_trajectory_tiles(task, sim.policies, sets));
    return 0;
}

namespace {

struct PanelData {
    std::string name;
    NavTask task;
    std::vector<PhaseMarker> markers;
};

std::vector<PanelData> build_panels(const NavTask& base_task, const PhaseConfig& cfg) {
    std::vector<PanelData> panels;

    NavTask shifted = base_task;
    NavTask split_task = base_task;
    GaussianPolicy pi_m = base_task.default_policy;
    bool have_shift = false;

    if (cfg.has_shift) {
        for (gaussian::Region& r : shifted.regions) {
            if (r.label == cfg.shift_label) {
                r.center = cfg.shift_center;
                have_shift = true;
            }
        }
        if (!have_shift) throw ConfigError("phase.shift: no region labeled " + cfg.shift_label);
        shifted.validate();
    }

    auto projection_markers = [](const NavTask& task, const GaussianPolicy& from) {
        std::vector<PhaseMarker> markers;
        markers.push_back({from.mu, from.sigma, "#111111", "default"});
        for (const gaussian::Region& r : task.regions) {
            try {
                const auto proj = gaussian::project_policy_to_state(from, r.label, task);
                markers.push_back({proj.policy.mu, proj.policy.sigma,
                                   region_color(task, r.label), "proj " + r.label});
            } catch (const StateNotFoundError&) {
                // state empty inside the box; no marker
            }
        }
        return markers;
    };

    for (const std::string& name : cfg.panels) {
        PanelData panel;
        panel.name = name;
        if (name == "original") {
            panel.task = base_task;
            panel.markers = projection_markers(base_task, base_task.default_policy);
        } else if (name == "shifted") {
            panel.task = shifted;
            panel.markers = projection_markers(shifted, shifted.default_policy);
            pi_m = resolve_pi_m(shifted, cfg.shift_label);
            panel.markers.push_back({pi_m.mu, pi_m.sigma, "#f2d21f", "pi_M"});
        } else if (name == "split") {
            pi_m = resolve_pi_m(shifted, cfg.shift_label);
            split_task = gaussian::split_state_gaussian(shifted, cfg.shift_label);
            panel.task = split_task;
            panel.markers = projection_markers(split_task, split_task.default_policy);
            panel.markers.push_back({pi_m.mu, pi_m.sigma, "#f2d21f", "pi_M"});
        } else {  // rebase
            pi_m = resolve_pi_m(shifted, cfg.shift_label);
            split_task = gaussian::split_state_gaussian(shifted, cfg.shift_label);
            NavTask rebased = split_task;
            rebased.default_policy = pi_m;
            panel.task = rebased;
            panel.markers = projection_markers(rebased, pi_m);
        }
        panels.push_back(std::move(panel));
    }
    return panels;
}

}  // namespace

int cmd_phase(RunContext& ctx) {
    const NavTask& base_task = require_task(ctx, "phase");
    if (!ctx.config.phase.has_value()) throw ConfigError("missing \"phase\" section");
    const PhaseConfig& cfg = *ctx.config.phase;

    std::vector<PanelData> panels = build_panels(base_task, cfg);

    json meta;
    meta["panels"] = json::array();
    std::vector<gaussian::PhaseGrid> svg_grids;
    std::vector<PhasePanel> svg_panels;
    svg_grids.reserve(panels.size());

    for (const PanelData& panel : panels) {
        const auto& box = panel.task.box;
        const gaussian::PhaseGrid grid = gaussian::phase_plot_grid(
            panel.task, box.mu_lo, box.mu_hi, box.sigma_lo, box.sigma_hi, cfg.resolution);

        CsvWriter csv;
        csv.comment(ctx.provenance("phase"));
        csv.comment("panel=" + panel.name + " task=" + task_to_json(panel.task).dump());
        std::vector<std::string> header{"mu", "sigma", "complexity_" + to_string(ctx.base),
                                        "state"};
        for (const std::string& label : grid.region_labels) header.push_back("dp_" + label);
        csv.header(header);
        for (const auto& cell : grid.cells) {
            std::vector<std::string> row{
                format_double(cell.mu), format_double(cell.sigma),
                format_double(DivergenceValue::from_nats(cell.complexity, ctx.base).value),
                grid.state_labels[static_cast<std::size_t>(cell.state_index)]};
            for (const double dp : cell.delta_p) row.push_back(format_double(dp));
            csv.row(row);
        }
        ctx.emit("phase_" + panel.name + ".csv", csv.str());

        json p;
        p["name"] = panel.name;
        p["task"] = task_to_json(panel.task);
        p["markers"] = json::array();
        for (const PhaseMarker& m : panel.markers) {
            p["markers"].push_back({{"mu", m.mu}, {"sigma", m.sigma}, {"label", m.label}});
        }
        p["delta_contour_segments"] = grid.delta_contour.size();
        meta["panels"].push_back(p);

        svg_grids.push_back(gaussian::phase_plot_grid(panel.task, box.mu_lo, box.mu_hi,
                                                      box.sigma_lo, box.sigma_hi,
                                                      cfg.svg_resolution));
    }
    for (std::size_t k = 0; k < panels.size(); ++k) {
        svg_panels.push_back(
            {panels[k].name, &panels[k].task, &svg_grids[k], panels[k].markers});
    }
    ctx.emit("phase.svg", render_phase_panels(svg_panels));
    ctx.emit("phase.json", meta.dump(2) + "\n");
    return 0;
}

namespace {

struct BackendBundle {
    std::unique_ptr<Backend> backend;
    BackendPoint pi0;
    double delta_nats = 0.0;
    double epsilon = 0.0;
    bool gaussian = false;
};

BackendBundle make_backend(const RunContext& ctx, const char* command) {
    BackendBundle bundle;
    if (ctx.config.task.has_value()) {
        const NavTask& task = *ctx.config.task;
        bundle.backend = std::make_unique<NavBackend>(task);
        bundle.pi0 = NavBackend::to_point(task.default_policy);
        bundle.delta_nats = task.delta_nats;
        bundle.epsilon = task.epsilon;
        bundle.gaussian = true;
    } else if (ctx.config.discrete.has_value()) {
        const DiscreteInstance& inst = *ctx.config.discrete;
        auto backend = std::make_unique<DiscreteBackend>(inst.base, inst.goal);
        bundle.pi0 = backend->base_point();
        bundle.backend = std::move(backend);
        bundle.delta_nats = inst.delta_nats;
        bundle.epsilon = inst.goal.epsilon;
    } else {
        throw ConfigError(std::string(command) + " requires a \"task\" or \"discrete\" section");
    }
    return bundle;
}

}  // namespace

int cmd_reach(RunContext& ctx) {
    BackendBundle bundle = make_backend(ctx, "reach");
    const ReachabilityReport report =
        find_reachable_states(bundle.pi0, bundle.delta_nats, *bundle.backend);
    json doc = report_to_json(report, ctx.base);
    doc["provenance"] = ctx.provenance("reach");
    doc["config"] = ctx.config.raw;
    ctx.emit("reach_report.json", doc.dump(2) + "\n");
    return report.all_reachable() ? 0 : 2;
}

int cmd_refine(RunContext& ctx) {
    BackendBundle bundle = make_backend(ctx, "refine");
    const int max_rounds = ctx.config.refine.value_or(RefineConfig{}).max_rounds;
    const RefineOutcome outcome =
        refine_goal(bundle.pi0, bundle.delta_nats, bundle.epsilon, *bundle.backend, max_rounds);

    json doc = refine_to_json(outcome, ctx.base);
    doc["provenance"] = ctx.provenance("refine");
    doc["config"] = ctx.config.raw;
    ctx.emit("refine_report.json", doc.dump(2) + "\n");

    json goal_doc;
    if (bundle.gaussian) {
        goal_doc = task_to_json(dynamic_cast<const NavBackend&>(*bundle.backend).task());
    } else {
        goal_doc = goal_to_json(dynamic_cast<const DiscreteBackend&>(*bundle.backend).goal());
    }
    ctx.emit("refined_goal.json", goal_doc.dump(2) + "\n");
    return outcome.controllable ? 0 : 2;
}

int cmd_curves(RunContext& ctx) {
    const NavTask& task = require_task(ctx, "curves");
    if (!ctx.config.curves.has_value()) throw ConfigError("missing \"curves\" section");
    const CurvesConfig& cfg = *ctx.config.curves;

    bool monotone = true;
    for (std::size_t ri = 0; ri < cfg.references.size(); ++ri) {
        GaussianPolicy ref;
        std::string ref_name;
        if (cfg.references[ri].has_value()) {
            ref = *cfg.references[ri];
            ref_name = "ref" + std::to_string(ri);
        } else {
            ref = resolve_pi_m(task, cfg.pi_m_target);
            ref_name = "pi_M";
        }

        if (!cfg.budgets.empty()) {
            const auto curves = gaussian::goal_complexity_curve(task, ref, cfg.budgets);
            CsvWriter csv;
            csv.comment(ctx.provenance("curves"));
            csv.comment("family=goal_complexity reference=(" + format_double(ref.mu) + "," +
                        format_double(ref.sigma) + ") task=" + task_to_json(task).dump());
            csv.header({"state", "budget_" + to_string(ctx.base), "max_delta_p", "argmax_mu",
                        "argmax_sigma"});
            for (const auto& curve : curves) {
                double prev = -1e300;
                for (const auto& p : curve.points) {
                    if (p.max_delta_p < prev - 1e-12) monotone = false;
                    prev = p.max_delta_p;
                    csv.row({curve.state_label,
                             format_double(
                                 DivergenceValue::from_nats(p.budget_nats, ctx.base).value),
                             format_double(p.max_delta_p), format_double(p.argmax.mu),
                             format_double(p.argmax.sigma)});
                }
            }
            ctx.emit("goal_complexity_" + ref_name + ".csv", csv.str());
            ctx.emit("goal_complexity_" + ref_name + ".svg",
                     render_goal_curves(task, curves,
                                        "max delta_p vs complexity (" + ref_name + ")"));
        }

        if (!cfg.epsilons.empty()) {
            const auto curves = gaussian::granularity_complexity_curve(task, ref, cfg.epsilons);
            CsvWriter csv;
            csv.comment(ctx.provenance("curves"));
            csv.comment("family=granularity_complexity reference=(" + format_double(ref.mu) +
                        "," + format_double(ref.sigma) + ") task=" + task_to_json(task).dump());
            csv.header({"state", "epsilon", "neg_log_epsilon",
                        "required_complexity_" + to_string(ctx.base), "present"});
            for (const auto& curve : curves) {
                // required complexity may not increase as epsilon shrinks
                double prev = 1e300;
                for (std::size_t k = curve.points.size(); k-- > 0;) {
                    const auto& p = curve.points[k];
                    if (!p.present) continue;
                    if (p.complexity_nats > prev + 1e-9) monotone = false;
                    prev = p.complexity_nats;
                }
                for (const auto& p : curve.points) {
                    csv.row({curve.state_label, format_double(p.epsilon),
                             format_double(p.neg_log_epsilon),
                             p.present ? format_double(DivergenceValue::from_nats(
                                                           p.complexity_nats, ctx.base)
                                                           .value)
                                       : std::string("absent"),
                             p.present ? "1" : "0"});
                }
            }
            ctx.emit("granularity_" + ref_name + ".csv", csv.str());
            ctx.emit("granularity_" + ref_name + ".svg",
                     render_granularity_curves(task, curves,
                                               "required complexity vs granularity (" + ref_name +
                                                   ")"));
        }
    }
    return monotone ? 0 : 2;
}

int cmd_sanov(RunContext& ctx) {
    const DiscreteInstance& inst = require_discrete(ctx, "sanov");
    if (!ctx.config.sanov.has_value()) throw ConfigError("missing \"sanov\" section");
    const SanovConfig& cfg = *ctx.config.sanov;

    int bin_index = -1;
    for (std::size_t i = 0; i < inst.goal.bins.size(); ++i) {
        if (inst.goal.bins[i].label == cfg.state_label) bin_index = static_cast<int>(i);
    }
    if (bin_index < 0) throw ConfigError("sanov.state: no bin labeled " + cfg.state_label);
    const TelicState state{cfg.state_label, bin_index};

    const SanovReport report = sanov_rate_estimate(inst.base, inst.goal, state,
                                                   cfg.sample_sizes, cfg.trials, ctx.seed);

    CsvWriter csv;
    csv.comment(ctx.provenance("sanov"));
    csv.comment("state=" + cfg.state_label + " goal=" + goal_to_json(inst.goal).dump());
    csv.header({"N", "hits", "trials", "rate_estimate", "telic_distance"});
    const double distance = DivergenceValue::from_nats(report.telic_distance_nats, ctx.base).value;
    for (const SanovPoint& p : report.points) {
        csv.row({std::to_string(p.n), std::to_string(p.hits), std::to_string(p.trials),
                 p.valid ? format_double(DivergenceValue::from_nats(p.rate_estimate, ctx.base).value)
                         : std::string("absent"),
                 format_double(distance)});
    }
    ctx.emit("sanov.csv", csv.str());

    json summary;
    summary["telic_distance_" + to_string(ctx.base)] = distance;
    int valid = 0;
    for (const SanovPoint& p : report.points) valid += p.valid ? 1 : 0;
    summary["valid_points"] = valid;
    summary["zero_hit_warning"] = valid < static_cast<int>(report.points.size());
    if (valid >= 2) {
        summary["fitted_slope_" + to_string(ctx.base)] =
            DivergenceValue::from_nats(fit_decay_slope(report.points), ctx.base).value;
    }
    summary["provenance"] = ctx.provenance("sanov");
    ctx.emit("sanov_summary.json", summary.dump(2) + "\n");
    return 0;
}

void write_manifest(RunContext& ctx, const std::string& command, double wall_ms) {
    json doc;
    doc["command"] = command;
    doc["config_hash"] = ctx.hash;
    doc["tool_version"] = kVersion;
    doc["seed"] = ctx.seed;
    doc["base"] = to_string(ctx.base);
    doc["wall_time_ms"] = wall_ms;
    std::vector<std::string> files = ctx.emitted;
    std::sort(files.begin(), files.end());
    doc["files"] = files;
    write_file_atomic((std::filesystem::path(ctx.out_dir) / "manifest.json").string(),
                      doc.dump(2) + "\n");
}

}  // namespace telic::io
