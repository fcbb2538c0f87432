#include "telic/io/reports.hpp"

#include "telic/io/config.hpp"

namespace telic::io {

using nlohmann::json;

json task_to_json(const gaussian::NavTask& task) {
    json doc;
    doc["horizon"] = task.horizon;
    doc["time_scaling"] = task.scaling == gaussian::TimeScaling::direct ? "direct" : "accumulate";
    doc["epsilon"] = task.epsilon;
    doc["delta"] = task.delta_nats;
    doc["delta_base"] = "nats";
    doc["default_policy"] = {{"mu", task.default_policy.mu}, {"sigma", task.default_policy.sigma}};
    json regions = json::array();
    for (const gaussian::Region& r : task.regions) {
        regions.push_back({{"label", r.label},
                           {"center", r.center},
                           {"radius", r.radius},
                           {"rank", r.rank}});
    }
    doc["regions"] = regions;
    doc["search_box"] = {{"mu", {task.box.mu_lo, task.box.mu_hi}},
                         {"sigma", {task.box.sigma_lo, task.box.sigma_hi}}};
    doc["grid_resolution"] = task.grid_resolution;
    doc["split_radius_scale"] = task.split_radius_scale;
    return doc;
}

gaussian::NavTask task_from_json(const json& doc) {
    ExperimentConfig cfg = parse_config(json{{"task", doc}});
    return *cfg.task;
}

json goal_to_json(const Goal& goal) {
    json doc;
    doc["epsilon"] = goal.epsilon;
    doc["feature"] = goal.features.label();
    json bins = json::array();
    for (const Bin& b : goal.bins) {
        bins.push_back({{"lo", b.lo}, {"hi", b.hi}, {"label", b.label}, {"rank", b.rank}});
    }
    doc["bins"] = bins;
    return doc;
}

json report_to_json(const ReachabilityReport& report, Base base) {
    json doc;
    doc["base"] = to_string(base);
    json states = json::array();
    for (const TelicState& s : report.states) {
        json entry;
        entry["label"] = s.label;
        const auto it = report.records.find(s.label);
        const bool reachable = it != report.records.end() && it->second.reachable;
        entry["reachable"] = reachable;
        if (it != report.records.end() && !it->second.diagnostic.empty()) {
            entry["diagnostic"] = it->second.diagnostic;
        }
        if (reachable) {
            json chain = json::array();
            for (const ChainStep& step : it->second.chain) {
                chain.push_back(
                    {{"policy_params", step.point},
                     {"state_label", step.state.label},
                     {"step_complexity",
                      DivergenceValue::from_nats(step.step_complexity_nats, base).value}});
            }
            entry["chain"] = chain;
            entry["chain_length"] = it->second.chain.size() - 1;
        }
        states.push_back(entry);
    }
    doc["states"] = states;
    doc["controllable"] = report.all_reachable();
    doc["unreachable"] = report.unreachable_labels();
    return doc;
}

json refine_to_json(const RefineOutcome& outcome, Base base) {
    json doc;
    doc["controllable"] = outcome.controllable;
    doc["rounds_used"] = outcome.rounds_used;
    json inserted = json::array();
    for (const TelicState& s : outcome.inserted) inserted.push_back(s.label);
    doc["inserted_states"] = inserted;
    if (!outcome.failure_reason.empty()) doc["failure_reason"] = outcome.failure_reason;
    doc["report"] = report_to_json(outcome.report, base);
    return doc;
}

}  // namespace telic::io
