#include "telic/reachability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "telic/errors.hpp"

namespace telic {

namespace {

constexpr double kBudgetSlack = 1e-9;

}  // namespace

bool ReachabilityReport::all_reachable() const {
    for (const TelicState& s : states) {
        auto it = records.find(s.label);
        if (it == records.end() || !it->second.reachable) return false;
    }
    return true;
}

std::vector<std::string> ReachabilityReport::reachable_labels() const {
    std::vector<std::string> out;
    for (const TelicState& s : states) {
        auto it = records.find(s.label);
        if (it != records.end() && it->second.reachable) out.push_back(s.label);
    }
    return out;
}

std::vector<std::string> ReachabilityReport::unreachable_labels() const {
    std::vector<std::string> out;
    for (const TelicState& s : states) {
        auto it = records.find(s.label);
        if (it == records.end() || !it->second.reachable) out.push_back(s.label);
    }
    return out;
}

namespace {

class Sweep {
public:
    Sweep(const Backend& backend, double delta, ReachabilityReport& report)
        : backend_(backend), delta_(delta), report_(report) {}

    bool reached(const std::string& label) const {
        auto it = report_.records.find(label);
        return it != report_.records.end() && it->second.reachable;
    }

    /// Unreached states ordered farthest-first from `from` (descending
    /// projection divergence, unattainable first), labels break ties.
    std::vector<TelicState> attempt_order(const BackendPoint& from) const {
        std::vector<std::pair<double, TelicState>> scored;
        for (const TelicState& s : report_.states) {
            if (reached(s.label)) continue;
            double d = std::numeric_limits<double>::infinity();
            try {
                d = backend_.project(from, s).divergence_nats;
            } catch (const TelicError&) {
                // keep infinite; the improve attempt records the diagnostic
            }
            scored.emplace_back(d, s);
        }
        std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second.label < b.second.label;
        });
        std::vector<TelicState> order;
        order.reserve(scored.size());
        for (auto& [d, s] : scored) order.push_back(std::move(s));
        return order;
    }

    /// Try to move from the end of `chain` toward `target`. Returns the label
    /// of a newly reached state (which may differ from the target), or "".
    std::string attempt(const std::vector<ChainStep>& chain, const TelicState& target) {
        const BackendPoint& from = chain.back().point;
        BackendPoint next;
        try {
            next = backend_.constrained_improve(from, target, delta_);
        } catch (const TelicError& e) {
            note_failure(target, e.what());
            return {};
        }
        const double step = backend_.complexity(next, from);
        if (!(step <= delta_ + kBudgetSlack)) {
            note_failure(target, "optimizer exceeded budget: step " + std::to_string(step));
            return {};
        }
        const TelicState landed = backend_.classify(next);
        if (reached(landed.label)) return {};
        StateRecord rec;
        rec.reachable = true;
        rec.chain = chain;
        rec.chain.push_back({std::move(next), landed, step});
        report_.records[landed.label] = std::move(rec);
        return landed.label;
    }

    void dfs(const std::vector<ChainStep>& chain) {
        for (const TelicState& target : attempt_order(chain.back().point)) {
            if (reached(target.label)) continue;  // reached by a deeper call
            const std::string landed = attempt(chain, target);
            if (!landed.empty()) dfs(report_.records.at(landed).chain);
        }
    }

    /// Re-attempt unreached states from every recorded witness endpoint until
    /// a full pass adds nothing. Each pass grows the reachable set, so this
    /// terminates within |states| passes.
    void closure() {
        bool changed = true;
        while (changed && !report_.all_reachable()) {
            changed = false;
            for (const std::string& label : report_.reachable_labels()) {
                const std::vector<ChainStep> chain = report_.records.at(label).chain;
                for (const TelicState& target : attempt_order(chain.back().point)) {
                    if (reached(target.label)) continue;
                    if (!attempt(chain, target).empty()) changed = true;
                }
            }
        }
    }

private:
    void note_failure(const TelicState& s, const std::string& msg) {
        auto& rec = report_.records[s.label];
        if (!rec.diagnostic.empty()) rec.diagnostic += "; ";
        rec.diagnostic += msg;
    }

    const Backend& backend_;
    double delta_;
    ReachabilityReport& report_;
};

}  // namespace

ReachabilityReport find_reachable_states(const BackendPoint& pi0, double delta_nats,
                                         const Backend& backend) {
    if (delta_nats < 0.0) throw TelicError("complexity capacity must be non-negative");
    ReachabilityReport report;
    report.states = backend.states();

    const TelicState start = backend.classify(pi0);
    StateRecord start_rec;
    start_rec.reachable = true;
    start_rec.chain = {{pi0, start, 0.0}};
    report.records[start.label] = std::move(start_rec);

    Sweep sweep(backend, delta_nats, report);
    sweep.dfs(report.records.at(start.label).chain);
    sweep.closure();

    for (const TelicState& s : report.states) {
        auto& rec = report.records[s.label];
        if (!rec.reachable && rec.diagnostic.empty()) {
            rec.diagnostic = "no budget-limited chain found";
        }
    }
    return report;
}

std::pair<bool, ReachabilityReport> is_telic_controllable(const BackendPoint& pi0,
                                                          double delta_nats,
                                                          const Backend& backend) {
    ReachabilityReport report = find_reachable_states(pi0, delta_nats, backend);
    const bool ok = report.all_reachable();
    return {ok, std::move(report)};
}

void verify_report_chains(const ReachabilityReport& report, const BackendPoint& pi0,
                          double delta_nats, const Backend& backend) {
    for (const auto& [label, rec] : report.records) {
        if (!rec.reachable) continue;
        if (rec.chain.empty()) throw TelicError("reachable state " + label + " has no chain");
        if (rec.chain.front().point != pi0) {
            throw TelicError("chain for " + label + " does not start at the default policy");
        }
        if (rec.chain.back().state.label != label) {
            throw TelicError("chain for " + label + " ends in " + rec.chain.back().state.label);
        }
        for (std::size_t t = 0; t < rec.chain.size(); ++t) {
            const ChainStep& step = rec.chain[t];
            if (backend.classify(step.point).label != step.state.label) {
                throw TelicError("chain step " + std::to_string(t) + " for " + label +
                                 " misclassifies");
            }
            if (t > 0) {
                const double kl = backend.complexity(step.point, rec.chain[t - 1].point);
                if (!(kl <= delta_nats + kBudgetSlack)) {
                    throw TelicError("chain step " + std::to_string(t) + " for " + label +
                                     " exceeds the budget: " + std::to_string(kl));
                }
            }
        }
    }
}

}  // namespace telic
