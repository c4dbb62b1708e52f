#include "concord/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "concord/errors.hpp"
#include "concord/kernels.hpp"

namespace concord {

bool validate_profile(const ScoringProfile& p, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    if (p.agents.empty()) return fail("no agents");
    {
        std::unordered_set<std::string> seen;
        for (const auto& a : p.agents)
            if (!seen.insert(a).second) return fail("duplicate agent '" + a + "'");
    }
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t j = 0; j < p.weightings.size(); ++j)
        if (!index.emplace(p.weightings[j], j).second)
            return fail("duplicate weighting name '" + p.weightings[j] + "'");
    if (p.considered.size() != p.agents.size() || p.scores.size() != p.agents.size())
        return fail("considered/scores do not line up with the agent list");

    std::vector<bool> covered(p.weightings.size(), false);
    for (std::size_t i = 0; i < p.agents.size(); ++i) {
        const auto& agent = p.agents[i];
        if (p.scores[i].size() != p.weightings.size())
            return fail("agent '" + agent + "' has a malformed score row");
        std::vector<bool> considers(p.weightings.size(), false);
        for (const auto& name : p.considered[i]) {
            auto it = index.find(name);
            if (it == index.end())
                return fail("agent '" + agent + "' considers unknown weighting '" + name + "'");
            if (considers[it->second])
                return fail("agent '" + agent + "' repeats weighting '" + name + "'");
            considers[it->second] = true;
            covered[it->second] = true;
        }
        double sum = 0.0;
        for (std::size_t j = 0; j < p.weightings.size(); ++j) {
            const double s = p.scores[i][j];
            if (!std::isfinite(s) || s < 0.0 || s > 1.0)
                return fail("agent '" + agent + "' scores '" + p.weightings[j] +
                            "' outside [0, 1]");
            if (s != 0.0 && !considers[j])
                return fail("agent '" + agent + "' scores unconsidered weighting '" +
                            p.weightings[j] + "'");
            sum += s;
        }
        if (std::fabs(sum - 1.0) > 1e-9)
            return fail("agent '" + agent + "' has scores summing to " + std::to_string(sum) +
                        ", expected 1");
    }
    for (std::size_t j = 0; j < p.weightings.size(); ++j)
        if (!covered[j])
            return fail("weighting '" + p.weightings[j] + "' is considered by no agent");
    if (why) why->clear();
    return true;
}

std::vector<double> propagate_step(const TrustMatrix& m, const std::vector<double>& scores) {
    std::string why;
    if (!validate(m, &why)) throw ValidationError("invalid trust matrix: " + why);
    const std::size_t k = m.size();
    if (scores.size() != k)
        throw ValidationError("score vector has " + std::to_string(scores.size()) +
                              " entries, expected " + std::to_string(k));
    std::vector<double> out(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) acc += m.at(i, j) * scores[j];
        out[i] = acc;
    }
    return out;
}

PowerConsensus power_consensus(const TrustMatrix& m, double epsilon, int max_steps,
                               kernels::ExecMode mode) {
    std::string why;
    if (!validate(m, &why)) throw ValidationError("invalid trust matrix: " + why);
    if (!(epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
    if (max_steps < 1) throw ValidationError("max_steps must be >= 1");

    const std::size_t k = m.size();
    std::vector<double> cur = m.rows, nxt(k * k);

    PowerConsensus result;
    result.spread = kernels::column_spread(cur.data(), k);
    while (result.spread > epsilon && result.steps < max_steps) {
        kernels::multiply(cur.data(), cur.data(), nxt.data(), k, mode);
        cur.swap(nxt);
        ++result.steps;
        result.spread = kernels::column_spread(cur.data(), k);
    }
    result.converged = result.spread <= epsilon;
    result.pi.assign(cur.begin(), cur.begin() + k);
    return result;
}

std::vector<double> stationary_exact(const TrustMatrix& m) {
    std::string why;
    if (!validate(m, &why)) throw ValidationError("invalid trust matrix: " + why);
    const std::size_t k = m.size();

    // Rows 0..k-2: (V^T - I) pi = 0; the redundant last row is replaced by
    // the normalization sum(pi) = 1.
    std::vector<double> a(k * k), b(k, 0.0);
    for (std::size_t row = 0; row + 1 < k; ++row)
        for (std::size_t col = 0; col < k; ++col)
            a[row * k + col] = m.at(col, row) - (row == col ? 1.0 : 0.0);
    for (std::size_t col = 0; col < k; ++col) a[(k - 1) * k + col] = 1.0;
    b[k - 1] = 1.0;

    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < k; ++row)
            if (std::fabs(a[row * k + col]) > std::fabs(a[pivot * k + col])) pivot = row;
        if (std::fabs(a[pivot * k + col]) < 1e-12)
            throw ComputeError("no unique consensus: the trust graph has no single limit");
        if (pivot != col) {
            for (std::size_t j = 0; j < k; ++j) std::swap(a[pivot * k + j], a[col * k + j]);
            std::swap(b[pivot], b[col]);
        }
        for (std::size_t row = col + 1; row < k; ++row) {
            const double factor = a[row * k + col] / a[col * k + col];
            if (factor == 0.0) continue;
            for (std::size_t j = col; j < k; ++j) a[row * k + j] -= factor * a[col * k + j];
            b[row] -= factor * b[col];
        }
    }
    std::vector<double> pi(k);
    for (std::size_t row = k; row-- > 0;) {
        double acc = b[row];
        for (std::size_t j = row + 1; j < k; ++j) acc -= a[row * k + j] * pi[j];
        pi[row] = acc / a[row * k + row];
    }

    double sum = 0.0;
    for (double& v : pi) {
        if (v < -1e-12)
            throw ComputeError("no unique consensus: stationary weights go negative");
        if (v < 0.0) v = 0.0;
        sum += v;
    }
    for (double& v : pi) v /= sum;

    double residual = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        double acc = -pi[j];
        for (std::size_t i = 0; i < k; ++i) acc += pi[i] * m.at(i, j);
        residual = std::max(residual, std::fabs(acc));
    }
    if (residual > 1e-10)
        throw ComputeError("no unique consensus: stationary residual " +
                           std::to_string(residual));
    return pi;
}

namespace {

void check_pi(const std::vector<double>& pi, std::size_t agents) {
    if (pi.size() != agents)
        throw ValidationError("influence vector has " + std::to_string(pi.size()) +
                              " entries, expected " + std::to_string(agents));
    double sum = 0.0;
    for (double v : pi) {
        if (!std::isfinite(v) || v < -1e-9)
            throw ValidationError("influence weights must be nonnegative");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-8)
        throw ValidationError("influence weights sum to " + std::to_string(sum) +
                              ", expected 1");
}

}  // namespace

ScoreMap consensus_scores(const ScoringProfile& profile, const std::vector<double>& pi) {
    std::string why;
    if (!validate_profile(profile, &why)) throw ValidationError("invalid profile: " + why);
    check_pi(pi, profile.agent_count());

    ScoreMap out;
    out.reserve(profile.weightings.size());
    for (std::size_t j = 0; j < profile.weightings.size(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < profile.agent_count(); ++i)
            acc += profile.scores[i][j] * pi[i];
        out.push_back({profile.weightings[j], acc});
    }
    return out;
}

std::vector<std::string> output_set(const ScoreMap& scores, double tie_tolerance) {
    if (scores.empty()) throw ValidationError("cannot select from an empty score map");
    if (tie_tolerance < 0.0) throw ValidationError("tie_tolerance must be >= 0");
    double best = scores.front().second;
    for (const auto& [name, s] : scores) best = std::max(best, s);
    std::vector<std::string> out;
    for (const auto& [name, s] : scores)
        if (s >= best - tie_tolerance) out.push_back(name);
    return out;
}

WeightingFunction aggregate_weighting(const ArgumentationFramework& af,
                                      const std::vector<WeightingFunction>& weightings,
                                      const ScoreMap& scores) {
    if (scores.empty()) throw ValidationError("cannot aggregate an empty score map");
    std::vector<const WeightingFunction*> picked;
    picked.reserve(scores.size());
    for (const auto& [name, s] : scores) {
        const WeightingFunction* found = nullptr;
        for (const auto& w : weightings)
            if (w.name == name) {
                found = &w;
                break;
            }
        if (!found) throw ValidationError("no values for scored weighting '" + name + "'");
        validate_weighting(af, *found);
        picked.push_back(found);
    }
    WeightingFunction out;
    out.name = "w_star";
    for (const auto& id : af.arguments()) {
        double acc = 0.0;
        for (std::size_t s = 0; s < scores.size(); ++s)
            acc += scores[s].second * picked[s]->at(id);
        out.values.push_back({id, acc});
    }
    return out;
}

bool dictatorship_possible(const std::vector<double>& pi, std::size_t agent_index) {
    if (agent_index >= pi.size())
        throw ValidationError("agent index " + std::to_string(agent_index) +
                              " out of range for " + std::to_string(pi.size()) + " agents");
    return pi[agent_index] > 0.5;
}

ConsensusResult run_consensus(const ArgumentationFramework& af,
                              const std::vector<WeightingFunction>& weightings,
                              const ScoringProfile& profile, const TrustMatrix& matrix,
                              double epsilon, double tie_tolerance, int max_steps,
                              kernels::ExecMode mode) {
    std::string why;
    if (!validate_profile(profile, &why)) throw ValidationError("invalid profile: " + why);
    if (tie_tolerance < 0.0) throw ValidationError("tie_tolerance must be >= 0");
    if (profile.agents != matrix.agents)
        throw ValidationError("profile and trust matrix disagree on the agent list");
    for (const auto& name : profile.weightings) {
        const WeightingFunction* found = nullptr;
        for (const auto& w : weightings)
            if (w.name == name) {
                found = &w;
                break;
            }
        if (!found) throw ValidationError("profile scores unknown weighting '" + name + "'");
        validate_weighting(af, *found);
    }

    auto power = power_consensus(matrix, epsilon, max_steps, mode);
    ConsensusResult result;
    result.pi = power.pi;
    result.steps = power.steps;
    result.epsilon = epsilon;
    result.converged = power.converged;
    if (result.converged) {
        result.consensus_scores = consensus_scores(profile, result.pi);
        result.output_set = output_set(result.consensus_scores, tie_tolerance);
        result.aggregated = aggregate_weighting(af, weightings, result.consensus_scores);
    }
    return result;
}

}  // namespace concord
