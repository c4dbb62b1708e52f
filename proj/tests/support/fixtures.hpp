#pragma once
// The worked demo instance shared by the golden tests: a five-argument
// framework, five candidate weightings, a four-agent scoring profile and
// the matching trust matrix. The expected values frozen here were derived
// by hand from the closed-form influence vector (1/2, 1/3, 1/6, 0).

#include <vector>

#include "concord/argumentation.hpp"
#include "concord/consensus.hpp"
#include "concord/trust.hpp"

namespace fixtures {

inline concord::ArgumentationFramework demo_af() {
    return concord::ArgumentationFramework(
        {"a", "b", "c", "d", "e"},
        {{"a", "e"}, {"d", "a"}, {"b", "a"}, {"e", "d"}, {"b", "c"}, {"c", "e"}});
}

inline std::vector<concord::WeightingFunction> demo_weightings() {
    return {
        {"w1", {{"a", 0.38}, {"b", 1.0}, {"c", 0.5}, {"d", 0.65}, {"e", 0.53}}},
        {"w2", {{"a", 0.07}, {"b", 0.91}, {"c", 0.08}, {"d", 0.2}, {"e", 0.78}}},
        {"w3", {{"a", 0.2}, {"b", 1.0}, {"c", 0.62}, {"d", 0.7}, {"e", 0.40}}},
        {"w4", {{"a", 0.17}, {"b", 1.0}, {"c", 0.25}, {"d", 0.25}, {"e", 0.5}}},
        {"w5", {{"a", 1.0}, {"b", 0.21}, {"c", 0.75}, {"d", 0.32}, {"e", 0.40}}},
    };
}

inline concord::TrustMatrix demo_trust_matrix() {
    return concord::make_trust_matrix({"A1", "A2", "A3", "A4"},
                                      {{0.75, 0.15, 0.1, 0.0},
                                       {0.2, 0.7, 0.1, 0.0},
                                       {0.35, 0.15, 0.5, 0.0},
                                       {0.3, 0.3, 0.3, 0.1}});
}

inline concord::ScoringProfile demo_profile() {
    concord::ScoringProfile p;
    p.agents = {"A1", "A2", "A3", "A4"};
    p.weightings = {"w1", "w2", "w3", "w4"};
    p.considered = {{"w1", "w2", "w3"}, {"w2", "w3"}, {"w3", "w4"}, {"w2", "w3", "w4"}};
    p.scores = {{0.4, 0.3, 0.3, 0.0},
                {0.0, 0.5, 0.5, 0.0},
                {0.0, 0.0, 0.7, 0.3},
                {0.0, 0.2, 0.1, 0.7}};
    return p;
}

// Unique solution of pi V = pi for the demo trust matrix.
inline std::vector<double> demo_influence() { return {0.5, 1.0 / 3.0, 1.0 / 6.0, 0.0}; }

// Exact consensus scores: dot products of the profile columns with the
// influence vector (w2 = 19/60, w3 = 13/30).
inline std::vector<double> demo_consensus_scores() {
    return {0.2, 19.0 / 60.0, 13.0 / 30.0, 0.05};
}

// Exact aggregation of w1..w4 under the scores above, per argument a..e.
inline std::vector<double> demo_aggregated() {
    return {0.193333333333333, 0.9715, 0.4065, 0.509166666666667, 0.551333333333333};
}

}  // namespace fixtures
