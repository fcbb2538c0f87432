#include <doctest.h>

#include <cmath>
#include <limits>

#include "telic/discrete_backend.hpp"
#include "telic/errors.hpp"
#include "telic/gaussian/backend.hpp"
#include "telic/reachability.hpp"
#include "telic/refinement.hpp"

#include "oracles.hpp"

using namespace telic;

namespace {

Experience atom(int id) {
    Experience h;
    h.steps.push_back({0, id});
    return h;
}

ExperienceDistribution binary(double q) {
    return ExperienceDistribution({atom(0), atom(1)}, {1.0 - q, q});
}

const FeatureSet kPhi = FeatureSet::from_experiences("atom1", {atom(1)});

Goal two_bin_goal(double edge, double epsilon = 0.05) {
    Goal g;
    g.features = kPhi;
    g.epsilon = epsilon;
    g.bins = {{0.0, edge, "low", 0.0, false}, {edge, 1.0, "high", 1.0, true}};
    g.validate();
    return g;
}

Goal four_bin_goal(double epsilon = 0.05) {
    Goal g;
    g.features = kPhi;
    g.epsilon = epsilon;
    g.bins = {{0.0, 0.3, "b0", 0.0, false},
              {0.3, 0.6, "b1", 1.0, false},
              {0.6, 0.9, "b2", 2.0, false},
              {0.9, 1.0, "b3", 3.0, true}};
    g.validate();
    return g;
}

gaussian::NavTask fast_fig3(double right_center) {
    gaussian::NavTask task = test::make_fig3_task(right_center);
    task.grid_resolution = 200;
    return task;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("backend invariants hold for both settings") {
    DiscreteBackend discrete(binary(0.15), four_bin_goal());
    gaussian::NavBackend nav(fast_fig3(2.0));

    const BackendPoint dp = discrete.base_point();
    const BackendPoint np = gaussian::NavBackend::to_point({0.4, 1.3});

    for (Backend* b : std::initializer_list<Backend*>{&discrete, &nav}) {
        const BackendPoint& p = b == static_cast<Backend*>(&discrete) ? dp : np;
        CHECK(b->complexity(p, p) == 0.0);
        const BackendPoint q = b->interpolate(p, p, 0.37);
        CHECK(q == p);
        const TelicState s = b->classify(p);
        bool found = false;
        for (const TelicState& t : b->states()) found = found || t.label == s.label;
        CHECK(found);
    }
    const BackendPoint other = gaussian::NavBackend::to_point({1.0, 0.5});
    CHECK(nav.interpolate(np, other, 0.0) == np);
    CHECK(nav.interpolate(np, other, 1.0) == other);
}

TEST_CASE("discrete reachability: unlimited budget reaches every bin") {
    DiscreteBackend backend(binary(0.15), four_bin_goal());
    const auto [ok, report] = is_telic_controllable(backend.base_point(), kInf, backend);
    CHECK(ok);
    for (const auto& [label, rec] : report.records) {
        if (!rec.reachable) continue;
        CHECK(rec.chain.size() - 1 <= backend.states().size());
    }
    verify_report_chains(report, backend.base_point(), kInf, backend);
}

TEST_CASE("discrete reachability: zero budget reaches only the starting state") {
    DiscreteBackend backend(binary(0.15), four_bin_goal());
    const ReachabilityReport report = find_reachable_states(backend.base_point(), 0.0, backend);
    CHECK(report.reachable_labels() == std::vector<std::string>{"b0"});
    CHECK(report.unreachable_labels() == std::vector<std::string>{"b1", "b2", "b3"});
}

TEST_CASE("discrete reachability: monotone in the budget") {
    DiscreteBackend backend(binary(0.15), four_bin_goal());
    std::vector<std::string> previous;
    for (const double delta : {0.01, 0.1, 0.4, 1.5}) {
        const ReachabilityReport report =
            find_reachable_states(backend.base_point(), delta, backend);
        const std::vector<std::string> now = report.reachable_labels();
        for (const std::string& label : previous) {
            CHECK(std::find(now.begin(), now.end(), label) != now.end());
        }
        previous = now;
        verify_report_chains(report, backend.base_point(), delta, backend);
    }
}

TEST_CASE("discrete split: midpoint complexity pins the budget exactly") {
    const double q = 0.3;
    const double target_edge = 0.9;
    const double divergence = binary_kl(target_edge, q);
    const double delta = 0.5 * divergence;

    DiscreteBackend backend(binary(q), two_bin_goal(target_edge));
    const BackendPoint pi0 = backend.base_point();
    const TelicState high{"high", 1};

    const SplitResult split = split_unreachable_state(pi0, high, delta, 0.05, backend);
    const double mid_complexity = backend.complexity(split.midpoint, pi0);
    CHECK(std::abs(mid_complexity - delta) <= 1e-6);

    // maximality: one step further along the segment breaks the budget
    const BackendProjection proj =
        DiscreteBackend(binary(q), two_bin_goal(target_edge)).project(pi0, high);
    const BackendPoint beyond =
        backend.interpolate(pi0, proj.target, std::min(1.0, split.t_star + 1e-4));
    CHECK(backend.complexity(beyond, pi0) > delta);

    // dense scan over the segment agrees with the bisection
    double t_scan = 0.0;
    for (int k = 0; k <= 1000000; ++k) {
        const double t = k * 1e-6;
        if (backend.complexity(backend.interpolate(pi0, proj.target, t), pi0) <= delta) {
            t_scan = t;
        } else {
            break;
        }
    }
    CHECK(std::abs(t_scan - split.t_star) <= 2e-6);

    // the midpoint's feature mass solves d(c || q) = delta, and the inserted
    // bin is its epsilon-neighborhood carved out of the host
    double lo = q, hi = target_edge;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (binary_kl(mid, q) <= delta ? lo : hi) = mid;
    }
    const double c_mid = backend.feature_mass(split.midpoint);
    CHECK(c_mid == doctest::Approx(lo).epsilon(1e-6));
    CHECK(split.new_state.label == "S_M");
    const Goal& refined = backend.goal();
    const Bin& m_bin = refined.bin(split.new_state.bin_index);
    CHECK(m_bin.lo == doctest::Approx(c_mid - 0.05));
    CHECK(m_bin.hi == doctest::Approx(c_mid + 0.05));
    // host split into low | S_M | low_hi, order preserved toward the target
    CHECK(refined.bins.size() == 4);
    CHECK(refined.bins[0].label == "low");
    CHECK(refined.bins[2].label == "low_hi");
    CHECK(refined.bins[0].rank < m_bin.rank);
    CHECK(m_bin.rank < refined.bins[2].rank);
    CHECK(refined.bins[2].rank < refined.bins[3].rank);
}

TEST_CASE("discrete split: reachable state refuses to split") {
    DiscreteBackend backend(binary(0.3), two_bin_goal(0.5));
    const TelicState high{"high", 1};
    CHECK_THROWS_AS(
        split_unreachable_state(backend.base_point(), high, 1.0, 0.05, backend),
        NoSplitNeededError);
}

TEST_CASE("discrete refine: one third of the distance needs a single split round") {
    // Analytically: with delta = d(0.9||0.3)/3, the midpoint lands at
    // c1 ~ 0.652; from there the remaining hop d(0.9||c1) ~ 0.165 < delta,
    // so one inserted state already makes the goal controllable.
    const double q = 0.3;
    const double delta = binary_kl(0.9, q) / 3.0;
    DiscreteBackend backend(binary(q), two_bin_goal(0.9));
    const RefineOutcome out =
        refine_goal(backend.base_point(), delta, 0.05, backend, 5);
    CHECK(out.controllable);
    CHECK(out.inserted.size() == 1);
    CHECK(out.inserted[0].label == "S_M");
    verify_report_chains(out.report, backend.base_point(), delta, backend);
    // the second hop is indeed within budget from the midpoint
    double lo = q, hi = 0.9;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (binary_kl(mid, q) <= delta ? lo : hi) = mid;
    }
    CHECK(binary_kl(0.9, lo) < delta);
}

TEST_CASE("discrete refine: repeated splits collapse and the failure is honest") {
    // With a very small budget the second round would re-derive the same
    // midpoint, whose neighborhood already is a bin: refinement must stop
    // with a diagnostic rather than loop or fake success.
    const double q = 0.3;
    const double delta = binary_kl(0.9, q) / 30.0;
    DiscreteBackend backend(binary(q), two_bin_goal(0.9, 0.002));
    const RefineOutcome out = refine_goal(backend.base_point(), delta, 0.002, backend, 6);
    CHECK_FALSE(out.controllable);
    CHECK(out.failure_reason.find("did not converge") != std::string::npos);
}

TEST_CASE("discrete refine: already-controllable goal returns untouched") {
    DiscreteBackend backend(binary(0.3), two_bin_goal(0.5));
    const Goal before = backend.goal();
    const RefineOutcome out = refine_goal(backend.base_point(), 1.0, 0.05, backend, 3);
    CHECK(out.controllable);
    CHECK(out.rounds_used == 1);
    CHECK(out.inserted.empty());
    CHECK(backend.goal().bins.size() == before.bins.size());
}

TEST_CASE("gaussian reachability: original task is controllable, shifted is not") {
    gaussian::NavBackend original(fast_fig3(2.0));
    const BackendPoint pi0 = gaussian::NavBackend::to_point({0.0, 1.0});
    const auto [ok_orig, report_orig] = is_telic_controllable(pi0, 1.0, original);
    CHECK(ok_orig);
    verify_report_chains(report_orig, pi0, 1.0, original);

    gaussian::NavBackend shifted(fast_fig3(2.5));
    const auto [ok_shift, report_shift] = is_telic_controllable(pi0, 1.0, shifted);
    CHECK_FALSE(ok_shift);
    CHECK(report_shift.unreachable_labels() == std::vector<std::string>{"S_R"});
}

TEST_CASE("gaussian split: budget binds at the segment midpoint") {
    gaussian::NavBackend backend(fast_fig3(2.5));
    const BackendPoint pi0 = gaussian::NavBackend::to_point({0.0, 1.0});
    const TelicState target{"S_R", -1};
    const SplitResult split = split_unreachable_state(pi0, target, 1.0, 0.1, backend);
    CHECK(std::abs(backend.complexity(split.midpoint, pi0) - 1.0) <= 1e-6);
    CHECK(split.t_star < 1.0);
    const BackendProjection proj = gaussian::NavBackend(fast_fig3(2.5)).project(pi0, target);
    const BackendPoint beyond = backend.interpolate(pi0, proj.target, split.t_star + 1e-4);
    CHECK(backend.complexity(beyond, pi0) > 1.0);
    CHECK(split.new_state.label == "S_M");
    CHECK(backend.classify(split.midpoint).label == "S_M");
}

TEST_CASE("gaussian refine: one round inserts S_M and restores controllability") {
    gaussian::NavBackend backend(fast_fig3(2.5));
    const BackendPoint pi0 = gaussian::NavBackend::to_point({0.0, 1.0});
    const RefineOutcome out = refine_goal(pi0, 1.0, 0.1, backend, 4);
    CHECK(out.controllable);
    REQUIRE(out.inserted.size() == 1);
    CHECK(out.inserted[0].label == "S_M");
    CHECK(backend.task().regions.size() == 3);

    // Eq.-12 style machine check of every witness chain
    verify_report_chains(out.report, pi0, 1.0, backend);

    // the S_R chain runs through S_M with at most two update steps
    const StateRecord& record = out.report.records.at("S_R");
    REQUIRE(record.reachable);
    CHECK(record.chain.size() - 1 <= 2);
    bool through_m = false;
    for (const ChainStep& step : record.chain) through_m |= step.state.label == "S_M";
    CHECK(through_m);
}

TEST_CASE("reports expose per-state diagnostics for unreachable states") {
    gaussian::NavBackend shifted(fast_fig3(2.5));
    const BackendPoint pi0 = gaussian::NavBackend::to_point({0.0, 1.0});
    const ReachabilityReport report = find_reachable_states(pi0, 1.0, shifted);
    const StateRecord& rec = report.records.at("S_R");
    CHECK_FALSE(rec.reachable);
    CHECK_FALSE(rec.diagnostic.empty());
}
