#include <doctest.h>

#include <cmath>
#include <vector>

#include "telic/errors.hpp"
#include "telic/goal.hpp"
#include "telic/projection.hpp"
#include "telic/rng.hpp"
#include "telic/tabular.hpp"

#include "oracles.hpp"

using namespace telic;

namespace {

const Alphabet kObs{{"o0", "o1"}};
const Alphabet kAct{{"a0", "a1"}};

Experience exp_of(std::initializer_list<std::pair<int, int>> steps) {
    Experience h;
    for (const auto& [o, a] : steps) h.steps.push_back({o, a});
    return h;
}

/// Fill every addressable history row up to length n with fixed vectors.
void fill_tables(TabularPolicy& policy, TabularEnvironment& env, int n,
                 const std::vector<double>& obs_row, const std::vector<double>& act_row) {
    std::vector<std::string> env_prefixes{""};
    for (int step = 0; step < n; ++step) {
        std::vector<std::string> next;
        for (const std::string& prefix : env_prefixes) {
            env.table[prefix] = obs_row;
            for (const std::string& o : kObs.symbols) {
                const std::string with_obs = prefix.empty() ? o : prefix + "," + o;
                policy.table[with_obs] = act_row;
                for (const std::string& a : kAct.symbols) {
                    next.push_back(with_obs + "," + a);
                }
            }
        }
        env_prefixes = std::move(next);
    }
}

Goal three_bin_goal(FeatureSet phi, double epsilon = 0.1) {
    Goal g;
    g.features = std::move(phi);
    g.epsilon = epsilon;
    g.bins = {{0.0, 0.45, "low", 0.0, false},
              {0.45, 0.55, "mid", 1.0, false},
              {0.55, 1.0, "high", 2.0, true}};
    g.validate();
    return g;
}

}  // namespace

TEST_CASE("trajectory probability: empty experience is the empty product") {
    TabularPolicy policy{kObs, kAct, {}};
    TabularEnvironment env{kObs, kAct, {}, 0};
    CHECK(trajectory_probability(policy, env, Experience{}) == 1.0);
}

TEST_CASE("trajectory probability: deterministic tables concentrate on one history") {
    TabularPolicy policy{kObs, kAct, {}};
    TabularEnvironment env{kObs, kAct, {}, 3};
    fill_tables(policy, env, 3, {1.0, 0.0}, {0.0, 1.0});  // always o0, always a1
    policy.validate();
    env.validate();

    const Experience consistent = exp_of({{0, 1}, {0, 1}, {0, 1}});
    CHECK(trajectory_probability(policy, env, consistent) == doctest::Approx(1.0));
    CHECK(trajectory_probability(policy, env, exp_of({{0, 1}, {1, 1}, {0, 1}})) == 0.0);
    CHECK(trajectory_probability(policy, env, exp_of({{0, 0}, {0, 1}, {0, 1}})) == 0.0);
}

TEST_CASE("trajectory probability: one-step hand computation") {
    TabularPolicy policy{kObs, kAct, {{"o0", {0.75, 0.25}}, {"o1", {0.75, 0.25}}}};
    TabularEnvironment env{kObs, kAct, {{"", {0.5, 0.5}}}, 1};
    CHECK(trajectory_probability(policy, env, exp_of({{0, 1}})) == doctest::Approx(0.125));
}

TEST_CASE("trajectory probability: unknown history names the offending prefix") {
    TabularPolicy policy{kObs, kAct, {{"o0", {1.0, 0.0}}}};
    TabularEnvironment env{kObs, kAct, {{"", {1.0, 0.0}}}, 2};
    CHECK_THROWS_WITH_AS(trajectory_probability(policy, env, exp_of({{0, 0}, {0, 0}})),
                         doctest::Contains("o0,a0"), UnknownHistoryError);
}

TEST_CASE("pushforward: n=0 is a point mass on the empty experience") {
    TabularPolicy policy{kObs, kAct, {}};
    TabularEnvironment env{kObs, kAct, {}, 0};
    const ExperienceDistribution d = policy_pushforward(policy, env, 0);
    CHECK(d.size() == 1);
    CHECK(d.mass_of(Experience{}) == 1.0);
}

TEST_CASE("pushforward: uniform one-step instance is uniform over 4 experiences") {
    TabularPolicy policy{kObs, kAct, {}};
    TabularEnvironment env{kObs, kAct, {}, 1};
    fill_tables(policy, env, 1, {0.5, 0.5}, {0.5, 0.5});
    const ExperienceDistribution d = policy_pushforward(policy, env, 1);
    REQUIRE(d.size() == 4);
    for (const double m : d.masses()) CHECK(m == doctest::Approx(0.25));
}

TEST_CASE("pushforward: iid Bernoulli action masses") {
    const Alphabet obs{{"o0"}};
    TabularPolicy policy{obs, kAct, {}};
    TabularEnvironment env{obs, kAct, {}, 2};
    env.table[""] = {1.0};
    env.table["o0,a0"] = {1.0};
    env.table["o0,a1"] = {1.0};
    policy.table["o0"] = {0.9, 0.1};
    policy.table["o0,a0,o0"] = {0.9, 0.1};
    policy.table["o0,a1,o0"] = {0.9, 0.1};
    const ExperienceDistribution d = policy_pushforward(policy, env, 2);
    REQUIRE(d.size() == 4);
    CHECK(d.mass_of(exp_of({{0, 0}, {0, 0}})) == doctest::Approx(0.81));
    CHECK(d.mass_of(exp_of({{0, 0}, {0, 1}})) == doctest::Approx(0.09));
    CHECK(d.mass_of(exp_of({{0, 1}, {0, 0}})) == doctest::Approx(0.09));
    CHECK(d.mass_of(exp_of({{0, 1}, {0, 1}})) == doctest::Approx(0.01));
    double total = 0.0;
    for (const double m : d.masses()) total += m;
    CHECK(std::abs(total - 1.0) <= 1e-9);
}

TEST_CASE("pushforward: enumeration cap rejects large instances") {
    TabularPolicy policy{kObs, kAct, {}};
    TabularEnvironment env{kObs, kAct, {}, 0};
    CHECK_THROWS_AS(policy_pushforward(policy, env, 12, 1000000), EnumerationTooLargeError);
}

TEST_CASE("empirical distribution: point mass, counts, idempotence, no samples") {
    const Experience h1 = exp_of({{0, 0}});
    const Experience h2 = exp_of({{0, 1}});
    const Experience h3 = exp_of({{1, 0}});

    const ExperienceDistribution single = empirical_distribution({h1});
    CHECK(single.mass_of(h1) == 1.0);

    const ExperienceDistribution counts = empirical_distribution({h1, h1, h2, h3});
    CHECK(counts.mass_of(h1) == doctest::Approx(0.5));
    CHECK(counts.mass_of(h2) == doctest::Approx(0.25));
    CHECK(counts.mass_of(h3) == doctest::Approx(0.25));

    const ExperienceDistribution repeated = empirical_distribution({h2, h2, h2, h2, h2});
    CHECK(repeated.size() == 1);
    CHECK(repeated.mass_of(h2) == 1.0);

    CHECK_THROWS_AS(empirical_distribution({}), NoSamplesError);
}

TEST_CASE("feature probability: full, empty, and partial features") {
    const Experience h1 = exp_of({{0, 0}});
    const Experience h2 = exp_of({{0, 1}});
    const ExperienceDistribution P({h1, h2}, {0.3, 0.7});
    CHECK(feature_probability(P, FeatureSet::everything()) == 1.0);
    CHECK(feature_probability(P, FeatureSet::nothing()) == 0.0);
    CHECK(feature_probability(P, FeatureSet::from_experiences("h2", {h2})) ==
          doctest::Approx(0.7));
}

TEST_CASE("prefers: sensitivity window and strict orderings") {
    const Experience h1 = exp_of({{0, 0}});
    const Experience h2 = exp_of({{0, 1}});
    const Goal g = three_bin_goal(FeatureSet::from_experiences("h2", {h2}));

    const ExperienceDistribution A({h1, h2}, {0.45, 0.55});
    const ExperienceDistribution B({h1, h2}, {0.5, 0.5});
    const ExperienceDistribution C({h1, h2}, {0.2, 0.8});

    CHECK(prefers(A, A, g) == Ordering::equivalent);
    CHECK(prefers(A, B, g) == Ordering::equivalent);  // |0.55-0.50| <= 0.1
    CHECK(prefers(C, B, g) == Ordering::a_preferred); // 0.30 > 0.1
    CHECK(prefers(B, C, g) == Ordering::b_preferred);
}

TEST_CASE("prefers: exactly one ordering holds for random pairs") {
    const Experience h1 = exp_of({{0, 0}});
    const Experience h2 = exp_of({{0, 1}});
    const Goal g = three_bin_goal(FeatureSet::from_experiences("h2", {h2}));
    test::TestRng rng(11);
    for (int k = 0; k < 200; ++k) {
        const double fa = rng.uniform(), fb = rng.uniform();
        const ExperienceDistribution A({h1, h2}, {1.0 - fa, fa});
        const ExperienceDistribution B({h1, h2}, {1.0 - fb, fb});
        const Ordering ab = prefers(A, B, g);
        const Ordering ba = prefers(B, A, g);
        if (ab == Ordering::equivalent) {
            CHECK(ba == Ordering::equivalent);  // symmetry of ~
        } else {
            CHECK(ab != ba);  // strict order flips
        }
    }
}

TEST_CASE("telic state: boundary conventions and well-definedness") {
    const Experience h1 = exp_of({{0, 0}});
    const Experience h2 = exp_of({{0, 1}});
    const Goal g = three_bin_goal(FeatureSet::from_experiences("h2", {h2}));

    CHECK(telic_state_of(ExperienceDistribution({h1}, {1.0}), g).label == "low");  // f = 0
    // boundary value belongs to the upper half-open bin start: f=0.55 -> third bin
    CHECK(telic_state_of(ExperienceDistribution({h1, h2}, {0.45, 0.55}), g).label == "high");
    // two distributions with the same feature probability share a state
    const ExperienceDistribution P1({h1, h2}, {0.52, 0.48});
    const ExperienceDistribution P2({h2, h1}, {0.48, 0.52});
    CHECK(telic_state_of(P1, g).label == telic_state_of(P2, g).label);
}

TEST_CASE("telic state: constant on epsilon balls inside a bin") {
    const Experience h1 = exp_of({{0, 0}});
    const Experience h2 = exp_of({{0, 1}});
    const Goal g = three_bin_goal(FeatureSet::from_experiences("h2", {h2}));
    test::TestRng rng(5);
    for (int k = 0; k < 100; ++k) {
        const double f = rng.uniform(0.0, 1.0);
        const int bin = g.bin_of(f);
        const double gap = std::min(f - g.bin(bin).lo, g.bin(bin).hi - f);
        const double jitter = rng.uniform(-1.0, 1.0) * gap * 0.99;
        const double f2 = f + jitter;
        const ExperienceDistribution A({h1, h2}, {1.0 - f, f});
        const ExperienceDistribution B({h1, h2}, {1.0 - f2, f2});
        CHECK(telic_state_of(A, g).label == telic_state_of(B, g).label);
    }
}

TEST_CASE("distribution: renormalization window and rejection") {
    const Experience h1 = exp_of({{0, 0}});
    const Experience h2 = exp_of({{0, 1}});
    // within 1e-6: renormalized
    const ExperienceDistribution d({h1, h2}, {0.5000002, 0.5000003});
    double total = 0.0;
    for (const double m : d.masses()) total += m;
    CHECK(std::abs(total - 1.0) <= 1e-12);
    // beyond 1e-6: rejected
    CHECK_THROWS_AS(ExperienceDistribution({h1, h2}, {0.6, 0.5}), TelicError);
    // duplicate support entries rejected
    CHECK_THROWS_AS(ExperienceDistribution({h1, h1}, {0.5, 0.5}), TelicError);
    // negative mass rejected
    CHECK_THROWS_AS(ExperienceDistribution({h1, h2}, {1.1, -0.1}), TelicError);
}

TEST_CASE("empirical distribution converges in total variation") {
    // supports of size <= 10, N = 1e5, total variation <= 0.02
    const int support_size = 10;
    std::vector<Experience> support;
    std::vector<double> mass;
    test::TestRng rng(99);
    double total = 0.0;
    for (int i = 0; i < support_size; ++i) {
        support.push_back(exp_of({{i % 2, (i / 2) % 2}, {(i / 4) % 2, (i / 8) % 2}}));
        mass.push_back(0.1 + rng.uniform());
        total += mass.back();
    }
    for (double& m : mass) m /= total;
    const ExperienceDistribution P(support, mass);

    std::vector<double> cdf(mass.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        acc += P.masses()[i];
        cdf[i] = acc;
    }
    const int n = 100000;
    std::vector<Experience> samples;
    samples.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double u = counter_uniform01(2024, 0, static_cast<std::uint64_t>(i));
        std::size_t idx = 0;
        while (idx + 1 < cdf.size() && u >= cdf[idx]) ++idx;
        samples.push_back(P.support()[idx]);
    }
    const ExperienceDistribution emp = empirical_distribution(samples);
    CHECK(total_variation(emp, P) <= 0.02);
}
