#include "telic/io/config.hpp"

#include <fstream>
#include <set>

#include "telic/tabular.hpp"

namespace telic::io {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(path + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            throw ConfigError(path + ": unknown field \"" + key + "\"");
        }
    }
}

double get_number(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) throw ConfigError(path + ": missing \"" + key + "\"");
    if (!obj[key].is_number()) throw ConfigError(path + "." + key + ": expected a number");
    return obj[key].get<double>();
}

double get_number_or(const json& obj, const std::string& key, double fallback) {
    return obj.contains(key) ? obj[key].get<double>() : fallback;
}

int get_int(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) throw ConfigError(path + ": missing \"" + key + "\"");
    if (!obj[key].is_number_integer()) throw ConfigError(path + "." + key + ": expected an integer");
    return obj[key].get<int>();
}

std::string get_string(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) throw ConfigError(path + ": missing \"" + key + "\"");
    if (!obj[key].is_string()) throw ConfigError(path + "." + key + ": expected a string");
    return obj[key].get<std::string>();
}

Base parse_base(const std::string& text, const std::string& path) {
    if (text == "nats") return Base::nats;
    if (text == "bits") return Base::bits;
    throw ConfigError(path + ": base must be \"nats\" or \"bits\"");
}

gaussian::GaussianPolicy parse_policy(const json& obj, const std::string& path) {
    require_keys(obj, path, {"mu", "sigma"});
    gaussian::GaussianPolicy p{get_number(obj, path, "mu"), get_number(obj, path, "sigma")};
    p.validate();
    return p;
}

gaussian::NavTask parse_task(const json& obj, const std::string& path) {
    require_keys(obj, path,
                 {"horizon", "time_scaling", "epsilon", "delta", "delta_base", "default_policy",
                  "regions", "search_box", "grid_resolution", "split_radius_scale"});
    gaussian::NavTask task;
    task.horizon = get_int(obj, path, "horizon");
    const std::string scaling = obj.contains("time_scaling")
                                    ? get_string(obj, path, "time_scaling")
                                    : std::string("accumulate");
    if (scaling == "accumulate") task.scaling = gaussian::TimeScaling::accumulate;
    else if (scaling == "direct") task.scaling = gaussian::TimeScaling::direct;
    else throw ConfigError(path + ".time_scaling: expected \"accumulate\" or \"direct\"");
    task.epsilon = get_number(obj, path, "epsilon");
    const double delta = get_number(obj, path, "delta");
    const Base delta_base = obj.contains("delta_base")
                                ? parse_base(get_string(obj, path, "delta_base"), path)
                                : Base::nats;
    task.delta_nats = DivergenceValue{delta, delta_base}.in_nats();
    if (!obj.contains("default_policy")) throw ConfigError(path + ": missing \"default_policy\"");
    task.default_policy = parse_policy(obj["default_policy"], path + ".default_policy");
    if (!obj.contains("regions") || !obj["regions"].is_array() || obj["regions"].empty()) {
        throw ConfigError(path + ": \"regions\" must be a non-empty array");
    }
    int index = 0;
    for (const json& r : obj["regions"]) {
        const std::string rpath = path + ".regions[" + std::to_string(index++) + "]";
        require_keys(r, rpath, {"label", "center", "radius", "rank"});
        gaussian::Region region;
        region.label = get_string(r, rpath, "label");
        region.center = get_number(r, rpath, "center");
        region.radius = get_number(r, rpath, "radius");
        region.rank = get_number(r, rpath, "rank");
        task.regions.push_back(region);
    }
    if (obj.contains("search_box")) {
        const json& b = obj["search_box"];
        require_keys(b, path + ".search_box", {"mu", "sigma"});
        if (!b.contains("mu") || !b["mu"].is_array() || b["mu"].size() != 2 ||
            !b.contains("sigma") || !b["sigma"].is_array() || b["sigma"].size() != 2) {
            throw ConfigError(path + ".search_box: expected mu: [lo,hi], sigma: [lo,hi]");
        }
        task.box = {b["mu"][0].get<double>(), b["mu"][1].get<double>(),
                    b["sigma"][0].get<double>(), b["sigma"][1].get<double>()};
    }
    if (obj.contains("grid_resolution")) task.grid_resolution = get_int(obj, path, "grid_resolution");
    task.split_radius_scale = get_number_or(obj, "split_radius_scale", 1.5);
    task.validate();
    return task;
}

std::map<std::string, std::vector<double>> parse_table(const json& obj, const std::string& path) {
    if (!obj.is_object()) throw ConfigError(path + ": expected an object of history rows");
    std::map<std::string, std::vector<double>> table;
    for (const auto& [key, value] : obj.items()) {
        if (!value.is_array()) throw ConfigError(path + "." + key + ": expected an array");
        table[key] = value.get<std::vector<double>>();
    }
    return table;
}

DiscreteInstance parse_discrete(const json& obj, const std::string& path) {
    require_keys(obj, path,
                 {"observations", "actions", "horizon", "policy", "environment",
                  "base_distribution", "feature", "epsilon", "delta", "delta_base", "bins"});
    Alphabet obs{obj.at("observations").get<std::vector<std::string>>()};
    Alphabet act{obj.at("actions").get<std::vector<std::string>>()};

    std::optional<ExperienceDistribution> base;
    if (obj.contains("base_distribution")) {
        std::vector<Experience> support;
        std::vector<double> mass;
        int index = 0;
        for (const json& entry : obj["base_distribution"]) {
            const std::string epath = path + ".base_distribution[" + std::to_string(index++) + "]";
            require_keys(entry, epath, {"experience", "mass"});
            support.push_back(parse_experience(get_string(entry, epath, "experience"), obs, act));
            mass.push_back(get_number(entry, epath, "mass"));
        }
        base.emplace(std::move(support), std::move(mass));
    } else {
        if (!obj.contains("policy") || !obj.contains("environment")) {
            throw ConfigError(path + ": needs either base_distribution or policy+environment");
        }
        TabularPolicy policy{obs, act, parse_table(obj["policy"], path + ".policy")};
        policy.validate();
        TabularEnvironment env{obs, act, parse_table(obj["environment"], path + ".environment"),
                               get_int(obj, path, "horizon")};
        env.validate();
        base.emplace(policy_pushforward(policy, env, env.horizon));
    }

    if (!obj.contains("feature") || !obj["feature"].is_array()) {
        throw ConfigError(path + ": \"feature\" must be an array of experience strings");
    }
    std::vector<Experience> members;
    for (const json& e : obj["feature"]) {
        members.push_back(parse_experience(e.get<std::string>(), obs, act));
    }

    Goal goal;
    goal.features = FeatureSet::from_experiences("feature", std::move(members));
    goal.epsilon = get_number(obj, path, "epsilon");
    if (!obj.contains("bins") || !obj["bins"].is_array() || obj["bins"].empty()) {
        throw ConfigError(path + ": \"bins\" must be a non-empty array");
    }
    int index = 0;
    for (const json& b : obj["bins"]) {
        const std::string bpath = path + ".bins[" + std::to_string(index++) + "]";
        require_keys(b, bpath, {"lo", "hi", "label", "rank"});
        Bin bin;
        bin.lo = get_number(b, bpath, "lo");
        bin.hi = get_number(b, bpath, "hi");
        bin.label = get_string(b, bpath, "label");
        bin.rank = get_number(b, bpath, "rank");
        goal.bins.push_back(bin);
    }
    goal.bins.back().closed_hi = true;
    goal.validate();

    const double delta = get_number(obj, path, "delta");
    const Base delta_base = obj.contains("delta_base")
                                ? parse_base(get_string(obj, path, "delta_base"), path)
                                : Base::nats;
    return DiscreteInstance(std::move(obs), std::move(act), std::move(*base), std::move(goal),
                            DivergenceValue{delta, delta_base}.in_nats());
}

SimulateConfig parse_simulate(const json& obj) {
    require_keys(obj, "simulate", {"policies", "count"});
    SimulateConfig cfg;
    if (!obj.contains("policies") || !obj["policies"].is_array() || obj["policies"].empty()) {
        throw ConfigError("simulate: \"policies\" must be a non-empty array");
    }
    int index = 0;
    for (const json& p : obj["policies"]) {
        cfg.policies.push_back(
            parse_policy(p, "simulate.policies[" + std::to_string(index++) + "]"));
    }
    cfg.count = get_int(obj, "simulate", "count");
    if (cfg.count < 1) throw ConfigError("simulate.count: must be >= 1");
    return cfg;
}

PhaseConfig parse_phase(const json& obj) {
    require_keys(obj, "phase", {"resolution", "svg_resolution", "panels", "shift"});
    PhaseConfig cfg;
    if (obj.contains("resolution")) cfg.resolution = get_int(obj, "phase", "resolution");
    if (obj.contains("svg_resolution")) cfg.svg_resolution = get_int(obj, "phase", "svg_resolution");
    if (cfg.resolution < 2 || cfg.svg_resolution < 2) {
        throw ConfigError("phase: resolutions must be >= 2");
    }
    if (obj.contains("panels")) {
        cfg.panels = obj["panels"].get<std::vector<std::string>>();
        for (const std::string& p : cfg.panels) {
            if (p != "original" && p != "shifted" && p != "split" && p != "rebase") {
                throw ConfigError("phase.panels: unknown panel \"" + p + "\"");
            }
        }
        if (cfg.panels.empty()) throw ConfigError("phase.panels: must be non-empty");
    }
    if (obj.contains("shift")) {
        require_keys(obj["shift"], "phase.shift", {"label", "center"});
        cfg.shift_label = get_string(obj["shift"], "phase.shift", "label");
        cfg.shift_center = get_number(obj["shift"], "phase.shift", "center");
        cfg.has_shift = true;
    }
    for (const std::string& p : cfg.panels) {
        if (p != "original" && !cfg.has_shift) {
            throw ConfigError("phase: panel \"" + p + "\" requires a shift section");
        }
    }
    return cfg;
}

CurvesConfig parse_curves(const json& obj) {
    require_keys(obj, "curves", {"budgets", "epsilons", "references", "pi_m_target"});
    CurvesConfig cfg;
    if (obj.contains("budgets")) cfg.budgets = obj["budgets"].get<std::vector<double>>();
    if (obj.contains("epsilons")) cfg.epsilons = obj["epsilons"].get<std::vector<double>>();
    if (cfg.budgets.empty() && cfg.epsilons.empty()) {
        throw ConfigError("curves: needs budgets and/or epsilons");
    }
    if (obj.contains("references")) {
        int index = 0;
        for (const json& r : obj["references"]) {
            const std::string rpath = "curves.references[" + std::to_string(index++) + "]";
            if (r.is_string()) {
                if (r.get<std::string>() != "pi_M") {
                    throw ConfigError(rpath + ": only \"pi_M\" is recognized");
                }
                cfg.references.push_back(std::nullopt);
            } else {
                cfg.references.push_back(parse_policy(r, rpath));
            }
        }
    }
    if (cfg.references.empty()) cfg.references.push_back(std::nullopt);
    if (obj.contains("pi_m_target")) cfg.pi_m_target = obj["pi_m_target"].get<std::string>();
    return cfg;
}

SanovConfig parse_sanov(const json& obj) {
    require_keys(obj, "sanov", {"sample_sizes", "trials", "state"});
    SanovConfig cfg;
    if (!obj.contains("sample_sizes")) throw ConfigError("sanov: missing \"sample_sizes\"");
    cfg.sample_sizes = obj["sample_sizes"].get<std::vector<int>>();
    if (cfg.sample_sizes.empty()) throw ConfigError("sanov.sample_sizes: must be non-empty");
    if (obj.contains("trials")) cfg.trials = obj["trials"].get<std::int64_t>();
    if (cfg.trials < 1) throw ConfigError("sanov.trials: must be >= 1");
    cfg.state_label = get_string(obj, "sanov", "state");
    return cfg;
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& doc) {
    require_keys(doc, "config",
                 {"seed", "base", "task", "discrete", "simulate", "phase", "curves", "reach",
                  "refine", "sanov"});
    ExperimentConfig cfg;
    cfg.raw = doc;
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
            throw ConfigError("seed: expected a non-negative integer");
        }
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("base")) cfg.base = parse_base(doc["base"].get<std::string>(), "base");
    if (doc.contains("task")) cfg.task = parse_task(doc["task"], "task");
    if (doc.contains("discrete")) cfg.discrete = parse_discrete(doc["discrete"], "discrete");
    if (doc.contains("simulate")) cfg.simulate = parse_simulate(doc["simulate"]);
    if (doc.contains("phase")) cfg.phase = parse_phase(doc["phase"]);
    if (doc.contains("curves")) cfg.curves = parse_curves(doc["curves"]);
    if (doc.contains("reach")) {
        require_keys(doc["reach"], "reach", {});
        cfg.has_reach_section = true;
    }
    if (doc.contains("refine")) {
        require_keys(doc["refine"], "refine", {"max_rounds"});
        RefineConfig rc;
        if (doc["refine"].contains("max_rounds")) {
            rc.max_rounds = get_int(doc["refine"], "refine", "max_rounds");
            if (rc.max_rounds < 1) throw ConfigError("refine.max_rounds: must be >= 1");
        }
        cfg.refine = rc;
    }
    if (doc.contains("sanov")) cfg.sanov = parse_sanov(doc["sanov"]);
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return parse_config(doc);
}

std::string config_hash(const nlohmann::json& canonical) {
    const std::string text = canonical.dump();
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace telic::io
