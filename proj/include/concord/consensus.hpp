#pragma once
// Trust-weighted opinion propagation: the power iteration to the influence
// vector, consensus scores, output-set selection and weighting aggregation.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "concord/argumentation.hpp"
#include "concord/kernels.hpp"
#include "concord/trust.hpp"

namespace concord {

// Per-agent initial opinions over the considered weighting set M.
struct ScoringProfile {
    std::vector<std::string> agents;
    std::vector<std::string> weightings;               // M, ordered
    std::vector<std::vector<std::string>> considered;  // per agent, subset of M
    std::vector<std::vector<double>> scores;           // dense, agents x M

    std::size_t agent_count() const noexcept { return agents.size(); }

    friend bool operator==(const ScoringProfile&, const ScoringProfile&) = default;
};

// Checks: scores nonzero only on considered weightings, nonzero scores in
// (0, 1], per-agent sums equal 1 within 1e-9, M equals the union of the
// considered sets.
bool validate_profile(const ScoringProfile& p, std::string* why = nullptr);

// One trust-weighted averaging step: V x scores.
std::vector<double> propagate_step(const TrustMatrix& m, const std::vector<double>& scores);

struct PowerConsensus {
    std::vector<double> pi;
    int steps = 0;        // squarings performed; the power reached is 2^steps
    bool converged = false;
    double spread = 0.0;  // last max column spread observed
};

// Squares V until every column's max-minus-min spread falls to epsilon or
// max_steps squarings are spent, then reads the influence vector off the
// first row of the converged power.
PowerConsensus power_consensus(const TrustMatrix& m, double epsilon, int max_steps = 64,
                               kernels::ExecMode mode = kernels::ExecMode::Auto);

// Direct solve of pi V = pi, sum pi = 1, by elimination. Reference for
// small k; ComputeError when no unique nonnegative solution exists.
std::vector<double> stationary_exact(const TrustMatrix& m);

// Named scores in M order.
using ScoreMap = std::vector<std::pair<std::string, double>>;

// S*(w) = sum_i S_i(w) * pi_i.
ScoreMap consensus_scores(const ScoringProfile& profile, const std::vector<double>& pi);

// Weightings within tie_tolerance of the best consensus score, in M order.
// tie_tolerance 0 gives the exact argmax set.
std::vector<std::string> output_set(const ScoreMap& scores, double tie_tolerance);

// w*(a) = sum over scored weightings of S*(w) * w(a).
WeightingFunction aggregate_weighting(const ArgumentationFramework& af,
                                      const std::vector<WeightingFunction>& weightings,
                                      const ScoreMap& scores);

// True iff the agent holds a strict majority of the influence and can
// therefore force any single weighting into the output set.
bool dictatorship_possible(const std::vector<double>& pi, std::size_t agent_index);

struct ConsensusResult {
    std::vector<double> pi;
    ScoreMap consensus_scores;
    std::vector<std::string> output_set;
    std::optional<WeightingFunction> aggregated;
    int steps = 0;
    double epsilon = 0.0;
    bool converged = false;

    friend bool operator==(const ConsensusResult&, const ConsensusResult&) = default;
};

// Full pipeline over parsed inputs. When the iteration does not converge,
// pi holds the best approximation and the score fields stay empty.
ConsensusResult run_consensus(const ArgumentationFramework& af,
                              const std::vector<WeightingFunction>& weightings,
                              const ScoringProfile& profile, const TrustMatrix& matrix,
                              double epsilon, double tie_tolerance, int max_steps = 64,
                              kernels::ExecMode mode = kernels::ExecMode::Auto);

}  // namespace concord
