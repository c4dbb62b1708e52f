#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "concord/consensus.hpp"
#include "concord/errors.hpp"
#include "concord/rng.hpp"
#include "concord/trust.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace concord;

namespace {

TrustMatrix identity_matrix(size_t k) {
    std::vector<std::vector<double>> rows(k, std::vector<double>(k, 0.0));
    for (size_t i = 0; i < k; ++i) rows[i][i] = 1.0;
    return make_trust_matrix(rows);
}

TrustMatrix uniform_matrix(size_t k) {
    return make_trust_matrix(
        std::vector<std::vector<double>>(k, std::vector<double>(k, 1.0 / double(k))));
}

double fixed_point_residual(const TrustMatrix& m, const std::vector<double>& pi) {
    const size_t k = m.size();
    double worst = 0.0;
    for (size_t j = 0; j < k; ++j) {
        double acc = 0.0;
        for (size_t i = 0; i < k; ++i) acc += pi[i] * m.at(i, j);
        worst = std::max(worst, std::fabs(acc - pi[j]));
    }
    return worst;
}

double score_of(const ScoreMap& scores, const std::string& name) {
    for (const auto& [n, s] : scores)
        if (n == name) return s;
    REQUIRE(false);
    return 0.0;
}

}  // namespace

TEST_CASE("one propagation step matches the hand-computed demo update") {
    auto out = propagate_step(fixtures::demo_trust_matrix(), {0.4, 0.0, 0.0, 0.0});
    REQUIRE(out.size() == 4);
    const double expect[] = {0.3, 0.08, 0.14, 0.12};
    for (size_t i = 0; i < 4; ++i) CHECK(std::fabs(out[i] - expect[i]) <= 1e-12);
}

TEST_CASE("propagation through the identity and the uniform matrix") {
    std::vector<double> s = {0.7, 0.1, 0.2};
    CHECK(propagate_step(identity_matrix(3), s) == s);
    auto mixed = propagate_step(uniform_matrix(3), s);
    for (double v : mixed) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(propagate_step(identity_matrix(3), {1.0, 0.0}), ValidationError);
}

TEST_CASE("power iteration recovers the demo influence vector") {
    auto r = power_consensus(fixtures::demo_trust_matrix(), 1e-9);
    REQUIRE(r.converged);
    CHECK(r.steps > 0);
    CHECK(r.spread <= 1e-9);
    auto expect = fixtures::demo_influence();
    REQUIRE(r.pi.size() == 4);
    for (size_t i = 0; i < 4; ++i) CHECK(std::fabs(r.pi[i] - expect[i]) <= 1e-6);
}

TEST_CASE("rank-one matrices converge without any squaring") {
    auto r = power_consensus(uniform_matrix(5), 1e-12);
    CHECK(r.converged);
    CHECK(r.steps == 0);
    for (double v : r.pi) CHECK(v == doctest::Approx(0.2).epsilon(1e-14));

    auto single = power_consensus(make_trust_matrix({{1.0}}), 1e-12);
    CHECK(single.converged);
    CHECK(single.steps == 0);
    CHECK(single.pi == std::vector<double>{1.0});
}

TEST_CASE("non-consensus matrices run out of steps") {
    auto r = power_consensus(identity_matrix(2), 1e-3, 30);
    CHECK_FALSE(r.converged);
    CHECK(r.steps == 30);
    CHECK(r.spread == doctest::Approx(1.0));

    auto swap = power_consensus(make_trust_matrix({{0.0, 1.0}, {1.0, 0.0}}), 1e-3, 10);
    CHECK_FALSE(swap.converged);
}

TEST_CASE("power iteration rejects bad arguments") {
    CHECK_THROWS_AS(power_consensus(fixtures::demo_trust_matrix(), 0.0), ValidationError);
    CHECK_THROWS_AS(power_consensus(fixtures::demo_trust_matrix(), -1e-3), ValidationError);
    CHECK_THROWS_AS(power_consensus(fixtures::demo_trust_matrix(), 1e-6, 0), ValidationError);
    auto invalid = make_trust_matrix({{0.6, 0.6}, {0.5, 0.5}});
    CHECK_THROWS_AS(power_consensus(invalid, 1e-6), ValidationError);
}

TEST_CASE("execution mode never changes the computed vector") {
    GenerationConfig cfg;
    cfg.size = 40;
    cfg.seed = 11;
    auto m = generate_convergent(cfg);
    auto serial = power_consensus(m, 1e-10, 64, kernels::ExecMode::Serial);
    auto parallel = power_consensus(m, 1e-10, 64, kernels::ExecMode::Parallel);
    auto automatic = power_consensus(m, 1e-10, 64, kernels::ExecMode::Auto);
    REQUIRE(serial.converged);
    CHECK(serial.pi == parallel.pi);
    CHECK(serial.pi == automatic.pi);
    CHECK(serial.steps == parallel.steps);
}

TEST_CASE("tightening the precision can only add squarings") {
    for (uint64_t seed = 0; seed < 25; ++seed) {
        GenerationConfig cfg;
        cfg.size = 3 + seed % 20;
        cfg.seed = 900 + seed;
        cfg.sparsity = (seed % 2) * 0.4;
        auto m = generate_convergent(cfg);
        auto coarse = power_consensus(m, 1e-3);
        auto fine = power_consensus(m, 1e-5);
        REQUIRE(coarse.converged);
        REQUIRE(fine.converged);
        CHECK(coarse.steps <= fine.steps);
    }
}

TEST_CASE("converged vectors are near-stationary and normalized") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        GenerationConfig cfg;
        cfg.size = 2 + 3 * (seed % 8);
        cfg.seed = 1300 + seed;
        auto m = generate_convergent(cfg);
        const double eps = seed % 2 ? 1e-8 : 1e-10;
        auto r = power_consensus(m, eps);
        REQUIRE(r.converged);
        CHECK(fixed_point_residual(m, r.pi) <= 10 * eps);
        double sum = 0.0;
        for (double v : r.pi) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(std::fabs(sum - 1.0) <= 1e-8);
    }
}

TEST_CASE("direct solve nails the demo influence vector") {
    auto pi = stationary_exact(fixtures::demo_trust_matrix());
    auto expect = fixtures::demo_influence();
    REQUIRE(pi.size() == 4);
    for (size_t i = 0; i < 4; ++i) CHECK(std::fabs(pi[i] - expect[i]) <= 1e-10);
}

TEST_CASE("direct solve handles tiny and permutation chains") {
    CHECK(stationary_exact(make_trust_matrix({{1.0}})) == std::vector<double>{1.0});
    // The swap chain is periodic yet has a unique stationary vector.
    auto pi = stationary_exact(make_trust_matrix({{0.0, 1.0}, {1.0, 0.0}}));
    CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("direct solve refuses matrices with several closed classes") {
    CHECK_THROWS_WITH_AS(stationary_exact(identity_matrix(2)),
                         doctest::Contains("no unique consensus"), ComputeError);
    // Two disconnected dense blocks.
    auto blocks = make_trust_matrix({{0.5, 0.5, 0.0, 0.0},
                                     {0.4, 0.6, 0.0, 0.0},
                                     {0.0, 0.0, 0.7, 0.3},
                                     {0.0, 0.0, 0.2, 0.8}});
    CHECK_THROWS_AS(stationary_exact(blocks), ComputeError);
}

TEST_CASE("power iteration and direct solve agree on random convergent matrices") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        GenerationConfig cfg;
        cfg.size = 2 + seed;
        cfg.seed = 2100 + seed;
        auto m = generate_convergent(cfg);
        auto exact = stationary_exact(m);
        auto iterated = power_consensus(m, 1e-12);
        REQUIRE(iterated.converged);
        for (size_t i = 0; i < m.size(); ++i)
            CHECK(std::fabs(exact[i] - iterated.pi[i]) <= 1e-8);
    }
}

TEST_CASE("influence concentrates on the single closed component") {
    Rng rng(401);
    for (int round = 0; round < 10; ++round) {
        const size_t k = 4 + rng.below(9);
        const size_t m = 1 + rng.below(k - 1);
        auto v = gen::single_sink_matrix(rng, k, m);
        auto an = analyze_graph(v);
        int closed_count = 0;
        for (bool c : an.closed) closed_count += c;
        REQUIRE(closed_count == 1);
        REQUIRE(an.aperiodic);
        auto pi = stationary_exact(v);
        for (size_t i = 0; i < k; ++i) {
            if (i < m)
                CHECK(pi[i] > 1e-9);
            else
                CHECK(std::fabs(pi[i]) <= 1e-9);
        }
    }
}

TEST_CASE("demo profile passes validation") {
    std::string why;
    CHECK(validate_profile(fixtures::demo_profile(), &why));
    CHECK(why.empty());
}

TEST_CASE("profile validation pinpoints violations") {
    std::string why;

    auto off_sum = fixtures::demo_profile();
    off_sum.scores[0] = {0.4, 0.3, 0.2, 0.0};
    CHECK_FALSE(validate_profile(off_sum, &why));
    CHECK(why.find("A1") != std::string::npos);

    auto stray = fixtures::demo_profile();
    stray.scores[0] = {0.4, 0.3, 0.2, 0.1};  // w4 not considered by A1
    CHECK_FALSE(validate_profile(stray));

    auto negative = fixtures::demo_profile();
    negative.scores[1] = {0.0, 1.5, -0.5, 0.0};
    CHECK_FALSE(validate_profile(negative));

    auto unknown_name = fixtures::demo_profile();
    unknown_name.considered[2] = {"w3", "nope"};
    CHECK_FALSE(validate_profile(unknown_name));

    auto uncovered = fixtures::demo_profile();
    uncovered.weightings.push_back("w9");  // in M but considered by nobody
    for (auto& row : uncovered.scores) row.push_back(0.0);
    CHECK_FALSE(validate_profile(uncovered));

    auto ragged = fixtures::demo_profile();
    ragged.considered.pop_back();
    CHECK_FALSE(validate_profile(ragged));
}

TEST_CASE("zero scores on considered weightings are legal") {
    ScoringProfile p;
    p.agents = {"X"};
    p.weightings = {"u", "v"};
    p.considered = {{"u", "v"}};
    p.scores = {{1.0, 0.0}};
    CHECK(validate_profile(p));
}

TEST_CASE("consensus scores of the demo profile") {
    auto scores = consensus_scores(fixtures::demo_profile(), fixtures::demo_influence());
    auto expect = fixtures::demo_consensus_scores();
    REQUIRE(scores.size() == 4);
    const char* names[] = {"w1", "w2", "w3", "w4"};
    for (size_t j = 0; j < 4; ++j) {
        CHECK(scores[j].first == names[j]);
        CHECK(std::fabs(scores[j].second - expect[j]) <= 1e-12);
    }
}

TEST_CASE("a single agent's scores pass through unchanged") {
    ScoringProfile p;
    p.agents = {"X"};
    p.weightings = {"u", "v"};
    p.considered = {{"u", "v"}};
    p.scores = {{0.25, 0.75}};
    auto scores = consensus_scores(p, {1.0});
    CHECK(score_of(scores, "u") == 0.25);
    CHECK(score_of(scores, "v") == 0.75);
}

TEST_CASE("consensus scores always sum to one") {
    Rng rng(402);
    for (int round = 0; round < 30; ++round) {
        const size_t k = 1 + rng.below(6);
        auto p = gen::random_profile(rng, gen::arg_names(k), 2 + rng.below(5));
        REQUIRE(validate_profile(p));
        auto pi = gen::random_distribution(rng, k);
        auto scores = consensus_scores(p, pi);
        double sum = 0.0;
        for (const auto& [name, s] : scores) sum += s;
        CHECK(std::fabs(sum - 1.0) <= 1e-8);
    }
}

TEST_CASE("consensus scores validate their inputs") {
    auto p = fixtures::demo_profile();
    CHECK_THROWS_AS(consensus_scores(p, {0.5, 0.5}), ValidationError);
    CHECK_THROWS_AS(consensus_scores(p, {0.5, 0.4, 0.3, 0.2}), ValidationError);
    auto bad = p;
    bad.scores[0] = {0.9, 0.3, 0.3, 0.0};
    CHECK_THROWS_AS(consensus_scores(bad, fixtures::demo_influence()), ValidationError);
}

TEST_CASE("output set selects the demo winner") {
    ScoreMap scores = {{"w1", 0.2}, {"w2", 19.0 / 60.0}, {"w3", 13.0 / 30.0}, {"w4", 0.05}};
    CHECK(output_set(scores, 0.0) == std::vector<std::string>{"w3"});
    CHECK(output_set(scores, 1e-9) == std::vector<std::string>{"w3"});
}

TEST_CASE("output set handles ties and tolerances") {
    ScoreMap equal = {{"a", 0.25}, {"b", 0.25}, {"c", 0.25}, {"d", 0.25}};
    CHECK(output_set(equal, 0.0) == std::vector<std::string>{"a", "b", "c", "d"});

    const double eps = 1e-4;
    ScoreMap close = {{"x", 0.5}, {"y", 0.5 - eps / 2}};
    CHECK(output_set(close, eps) == std::vector<std::string>{"x", "y"});
    CHECK(output_set(close, 0.0) == std::vector<std::string>{"x"});

    CHECK_THROWS_AS(output_set({}, 0.0), ValidationError);
    CHECK_THROWS_AS(output_set(close, -1e-9), ValidationError);
}

TEST_CASE("aggregation reproduces the demo weighting exactly") {
    auto af = fixtures::demo_af();
    auto ws = fixtures::demo_weightings();
    ws.pop_back();  // the demo profile scores w1..w4 only
    ScoreMap scores = {{"w1", 0.2}, {"w2", 19.0 / 60.0}, {"w3", 13.0 / 30.0}, {"w4", 0.05}};
    auto wstar = aggregate_weighting(af, ws, scores);
    auto expect = fixtures::demo_aggregated();
    const char* args[] = {"a", "b", "c", "d", "e"};
    for (size_t i = 0; i < 5; ++i) CHECK(std::fabs(wstar.at(args[i]) - expect[i]) <= 1e-12);
}

TEST_CASE("aggregating a singleton returns that weighting's values") {
    auto af = fixtures::demo_af();
    auto ws = fixtures::demo_weightings();
    auto wstar = aggregate_weighting(af, ws, {{"w2", 1.0}});
    for (const auto& [id, v] : ws[1].values) CHECK(wstar.at(id) == v);
}

TEST_CASE("a perfect tie between mirrored weightings erases all_different") {
    ArgumentationFramework af({"a", "b", "c"}, {});
    WeightingFunction w1{"w1", {{"a", 1.0}, {"b", 0.5}, {"c", 0.0}}};
    WeightingFunction w2{"w2", {{"a", 0.0}, {"b", 0.5}, {"c", 1.0}}};
    CHECK(check_property(af, w1, WeightingProperty::AllDifferent));
    CHECK(check_property(af, w2, WeightingProperty::AllDifferent));
    auto wstar = aggregate_weighting(af, {w1, w2}, {{"w1", 0.5}, {"w2", 0.5}});
    CHECK(wstar.at("a") == 0.5);
    CHECK(wstar.at("b") == 0.5);
    CHECK(wstar.at("c") == 0.5);
    CHECK_FALSE(check_property(af, wstar, WeightingProperty::AllDifferent));
}

TEST_CASE("aggregation validates its inputs") {
    auto af = fixtures::demo_af();
    auto ws = fixtures::demo_weightings();
    CHECK_THROWS_WITH_AS(aggregate_weighting(af, ws, {{"w9", 1.0}}),
                         doctest::Contains("w9"), ValidationError);
    CHECK_THROWS_AS(aggregate_weighting(af, ws, {}), ValidationError);
    WeightingFunction partial{"p", {{"a", 0.5}}};
    CHECK_THROWS_AS(aggregate_weighting(af, {partial}, {{"p", 1.0}}), ValidationError);
}

TEST_CASE("unanimous orderings survive aggregation") {
    Rng rng(403);
    for (int round = 0; round < 120; ++round) {
        auto af = gen::random_af(rng, 2 + rng.below(6), 0.3);
        const auto& args = af.arguments();
        size_t hi = rng.below(args.size());
        size_t lo = rng.below(args.size());
        if (hi == lo) lo = (lo + 1) % args.size();
        const size_t m = 2 + rng.below(4);
        std::vector<WeightingFunction> ws;
        for (size_t j = 0; j < m; ++j) {
            auto w = gen::random_weighting(rng, af, "w" + std::to_string(j + 1));
            for (auto& [id, v] : w.values) {
                if (id == args[hi]) v = 0.5 + 0.5 * rng.canonical();
                if (id == args[lo]) v = 0.49 * rng.canonical();
            }
            ws.push_back(w);
        }
        ScoreMap scores;
        auto dist = gen::random_distribution(rng, m);
        for (size_t j = 0; j < m; ++j) scores.push_back({ws[j].name, dist[j]});
        auto wstar = aggregate_weighting(af, ws, scores);
        CHECK(wstar.at(args[hi]) > wstar.at(args[lo]));
    }
}

TEST_CASE("properties shared by every input weighting survive aggregation") {
    Rng rng(404);
    for (auto prop : {WeightingProperty::VoidPrecedence,
                      WeightingProperty::CardinalityPrecedence,
                      WeightingProperty::SelfContradiction}) {
        for (int round = 0; round < 25; ++round) {
            auto af = gen::random_af(rng, 2 + rng.below(6), 0.3, 0.2);
            const size_t m = 2 + rng.below(4);
            std::vector<WeightingFunction> ws;
            ScoreMap scores;
            auto dist = gen::random_distribution(rng, m);
            for (size_t j = 0; j < m; ++j) {
                ws.push_back(gen::banded_weighting(rng, af, prop, "w" + std::to_string(j + 1)));
                REQUIRE(check_property(af, ws.back(), prop));
                scores.push_back({ws.back().name, dist[j]});
            }
            auto wstar = aggregate_weighting(af, ws, scores);
            CAPTURE(property_name(prop));
            CHECK(check_property(af, wstar, prop));
        }
    }
}

TEST_CASE("majority influence enables dictatorship, exact half does not") {
    CHECK_FALSE(dictatorship_possible(fixtures::demo_influence(), 0));
    CHECK(dictatorship_possible({0.6, 0.4}, 0));
    CHECK_FALSE(dictatorship_possible({0.6, 0.4}, 1));
    CHECK(dictatorship_possible({1.0}, 0));
    CHECK_THROWS_AS(dictatorship_possible({0.6, 0.4}, 2), ValidationError);
}

TEST_CASE("a majority holder concentrating on one weighting forces the output") {
    Rng rng(405);
    for (int round = 0; round < 40; ++round) {
        const size_t k = 2 + rng.below(7);
        const size_t m = 2 + rng.below(5);
        const size_t d = rng.below(k);
        auto agents = gen::arg_names(k);
        auto p = gen::random_profile(rng, agents, m);
        const size_t target = rng.below(m);
        p.considered[d] = {p.weightings[target]};
        p.scores[d].assign(m, 0.0);
        p.scores[d][target] = 1.0;
        // Keep every weighting considered by somebody after the dictator
        // narrowed their set down to the target.
        const size_t helper = (d + 1) % k;
        p.considered[helper] = p.weightings;
        p.scores[helper] = gen::random_distribution(rng, m);
        REQUIRE(validate_profile(p));
        auto pi = gen::dictator_distribution(rng, k, d);
        REQUIRE(dictatorship_possible(pi, d));
        auto out = output_set(consensus_scores(p, pi), 0.0);
        CHECK(out == std::vector<std::string>{p.weightings[target]});
    }
}

TEST_CASE("full pipeline on the demo instance") {
    auto ws = fixtures::demo_weightings();
    ws.pop_back();  // profile covers w1..w4
    auto r = run_consensus(fixtures::demo_af(), ws, fixtures::demo_profile(),
                           fixtures::demo_trust_matrix(), 1e-9, 1e-9);
    REQUIRE(r.converged);
    CHECK(r.steps > 0);
    CHECK(r.epsilon == 1e-9);
    auto expect_pi = fixtures::demo_influence();
    for (size_t i = 0; i < 4; ++i) CHECK(std::fabs(r.pi[i] - expect_pi[i]) <= 1e-6);
    auto expect_scores = fixtures::demo_consensus_scores();
    REQUIRE(r.consensus_scores.size() == 4);
    for (size_t j = 0; j < 4; ++j)
        CHECK(std::fabs(r.consensus_scores[j].second - expect_scores[j]) <= 1e-6);
    CHECK(r.output_set == std::vector<std::string>{"w3"});
    REQUIRE(r.aggregated.has_value());
    auto expect_w = fixtures::demo_aggregated();
    const char* args[] = {"a", "b", "c", "d", "e"};
    for (size_t i = 0; i < 5; ++i)
        CHECK(std::fabs(r.aggregated->at(args[i]) - expect_w[i]) <= 1e-6);
}

TEST_CASE("extra catalogued weightings do not disturb the pipeline") {
    // w5 exists in the catalogue but no agent scores it.
    auto r = run_consensus(fixtures::demo_af(), fixtures::demo_weightings(),
                           fixtures::demo_profile(), fixtures::demo_trust_matrix(), 1e-9, 1e-9);
    REQUIRE(r.converged);
    CHECK(r.output_set == std::vector<std::string>{"w3"});
    CHECK(r.consensus_scores.size() == 4);
}

TEST_CASE("pipeline reports non-convergence and skips the scores") {
    ArgumentationFramework af({"x"}, {});
    std::vector<WeightingFunction> ws = {{"u", {{"x", 1.0}}}};
    ScoringProfile p;
    p.agents = {"A1", "A2"};
    p.weightings = {"u"};
    p.considered = {{"u"}, {"u"}};
    p.scores = {{1.0}, {1.0}};
    auto m = make_trust_matrix({"A1", "A2"}, {{1.0, 0.0}, {0.0, 1.0}});
    auto r = run_consensus(af, ws, p, m, 1e-3, 0.0, 5);
    CHECK_FALSE(r.converged);
    CHECK(r.steps == 5);
    CHECK(r.pi.size() == 2);
    CHECK(r.consensus_scores.empty());
    CHECK(r.output_set.empty());
    CHECK_FALSE(r.aggregated.has_value());
}

TEST_CASE("pipeline validates referential integrity") {
    auto ws = fixtures::demo_weightings();
    auto p = fixtures::demo_profile();
    auto m = fixtures::demo_trust_matrix();
    auto af = fixtures::demo_af();

    auto renamed = m;
    renamed.agents[0] = "B1";
    CHECK_THROWS_AS(run_consensus(af, ws, p, renamed, 1e-9, 1e-9), ValidationError);

    std::vector<WeightingFunction> missing(ws.begin() + 1, ws.end());  // drops w1
    CHECK_THROWS_AS(run_consensus(af, missing, p, m, 1e-9, 1e-9), ValidationError);

    auto partial = ws;
    partial[0].values.pop_back();
    CHECK_THROWS_AS(run_consensus(af, partial, p, m, 1e-9, 1e-9), ValidationError);
}
