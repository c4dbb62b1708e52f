#include "concord/trust.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <unordered_set>

#include "concord/errors.hpp"
#include "concord/rng.hpp"

namespace concord {

TrustMatrix make_trust_matrix(std::vector<std::vector<double>> rows) {
    std::vector<std::string> agents;
    agents.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) agents.push_back("A" + std::to_string(i + 1));
    return make_trust_matrix(std::move(agents), std::move(rows));
}

TrustMatrix make_trust_matrix(std::vector<std::string> agents,
                              std::vector<std::vector<double>> rows) {
    const std::size_t k = agents.size();
    if (k == 0) throw ValidationError("a trust matrix needs at least one agent");
    if (rows.size() != k)
        throw ValidationError("expected " + std::to_string(k) + " rows, got " +
                              std::to_string(rows.size()));
    TrustMatrix m;
    m.agents = std::move(agents);
    m.rows.reserve(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        if (rows[i].size() != k)
            throw ValidationError("row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(k));
        m.rows.insert(m.rows.end(), rows[i].begin(), rows[i].end());
    }
    return m;
}

bool validate(const TrustMatrix& m, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    const std::size_t k = m.agents.size();
    if (k == 0) return fail("no agents");
    std::unordered_set<std::string> names;
    for (const auto& a : m.agents)
        if (!names.insert(a).second) return fail("duplicate agent name '" + a + "'");
    if (m.rows.size() != k * k)
        return fail("expected " + std::to_string(k * k) + " entries, got " +
                    std::to_string(m.rows.size()));
    for (std::size_t i = 0; i < k; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double v = m.rows[i * k + j];
            if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                return fail("row " + std::to_string(i) + " has an entry outside [0, 1]");
            sum += v;
        }
        if (std::fabs(sum - 1.0) > kRowSumTolerance)
            return fail("row " + std::to_string(i) + " sums to " + std::to_string(sum) +
                        ", expected 1");
    }
    if (why) why->clear();
    return true;
}

namespace {

// Classic recursive strongly-connected-components search; emits components
// in reverse topological order.
struct TarjanState {
    const TrustMatrix& m;
    std::size_t k;
    std::vector<int> index, lowlink;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    int next_index = 0;
    std::vector<std::vector<int>> sccs;

    explicit TarjanState(const TrustMatrix& matrix)
        : m(matrix), k(matrix.size()), index(k, -1), lowlink(k, 0), on_stack(k, false) {}

    void visit(int v) {
        index[v] = lowlink[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w = 0; w < k; ++w) {
            if (m.at(v, w) <= 0.0) continue;
            if (index[w] < 0) {
                visit(static_cast<int>(w));
                lowlink[v] = std::min(lowlink[v], lowlink[w]);
            } else if (on_stack[w]) {
                lowlink[v] = std::min(lowlink[v], index[w]);
            }
        }
        if (lowlink[v] == index[v]) {
            std::vector<int> scc;
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                scc.push_back(w);
            } while (w != v);
            std::sort(scc.begin(), scc.end());
            sccs.push_back(std::move(scc));
        }
    }
};

// gcd of all cycle lengths inside one SCC, via breadth-first levels: every
// intra-SCC edge u->v contributes level[u] + 1 - level[v]. Zero means the
// component has no internal cycle at all.
int scc_period(const TrustMatrix& m, const std::vector<int>& scc,
               const std::vector<int>& scc_of) {
    const int id = scc_of[scc.front()];
    std::vector<int> level(m.size(), -1);
    std::queue<int> frontier;
    level[scc.front()] = 0;
    frontier.push(scc.front());
    int period = 0;
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        for (std::size_t w = 0; w < m.size(); ++w) {
            if (m.at(u, w) <= 0.0 || scc_of[w] != id) continue;
            if (level[w] < 0) {
                level[w] = level[u] + 1;
                frontier.push(static_cast<int>(w));
            }
            period = std::gcd(period, level[u] + 1 - level[w]);
        }
    }
    return period;
}

}  // namespace

TrustGraphAnalysis analyze_graph(const TrustMatrix& m) {
    std::string why;
    if (!validate(m, &why)) throw ValidationError("invalid trust matrix: " + why);

    TarjanState tarjan(m);
    for (std::size_t v = 0; v < m.size(); ++v)
        if (tarjan.index[v] < 0) tarjan.visit(static_cast<int>(v));

    TrustGraphAnalysis an;
    an.sccs = std::move(tarjan.sccs);

    std::vector<int> scc_of(m.size(), -1);
    for (std::size_t s = 0; s < an.sccs.size(); ++s)
        for (int v : an.sccs[s]) scc_of[v] = static_cast<int>(s);

    an.closed.resize(an.sccs.size(), true);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m.at(i, j) > 0.0 && scc_of[i] != scc_of[j]) an.closed[scc_of[i]] = false;

    an.periods.reserve(an.sccs.size());
    for (const auto& scc : an.sccs) an.periods.push_back(scc_period(m, scc, scc_of));

    an.aperiodic = true;
    for (std::size_t s = 0; s < an.sccs.size(); ++s)
        if (an.closed[s] && an.periods[s] != 1) an.aperiodic = false;
    return an;
}

namespace {

// Row-major bit matrix; one row of k bits packed into 64-bit words.
struct SupportMatrix {
    std::size_t k, words;
    std::vector<std::uint64_t> bits;

    explicit SupportMatrix(std::size_t size)
        : k(size), words((size + 63) / 64), bits(size * words, 0) {}

    void set(std::size_t i, std::size_t j) { bits[i * words + j / 64] |= 1ULL << (j % 64); }

    // True when some column is set in every row.
    bool has_full_column() const {
        std::vector<std::uint64_t> acc(bits.begin(), bits.begin() + words);
        for (std::size_t i = 1; i < k; ++i)
            for (std::size_t w = 0; w < words; ++w) acc[w] &= bits[i * words + w];
        for (std::uint64_t word : acc)
            if (word) return true;
        return false;
    }

    // this = this * other, boolean semiring.
    void multiply(const SupportMatrix& other) {
        std::vector<std::uint64_t> row(words);
        for (std::size_t i = 0; i < k; ++i) {
            std::fill(row.begin(), row.end(), 0);
            for (std::size_t t = 0; t < k; ++t) {
                if (!(bits[i * words + t / 64] >> (t % 64) & 1ULL)) continue;
                for (std::size_t w = 0; w < words; ++w) row[w] |= other.bits[t * words + w];
            }
            std::copy(row.begin(), row.end(), bits.begin() + i * words);
        }
    }
};

}  // namespace

bool can_reach_consensus(const TrustMatrix& m, int max_power) {
    std::string why;
    if (!validate(m, &why)) throw ValidationError("invalid trust matrix: " + why);
    if (max_power < 1) throw ValidationError("max_power must be >= 1");

    const std::size_t k = m.size();
    SupportMatrix support(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (m.at(i, j) > 0.0) support.set(i, j);

    SupportMatrix power = support;
    for (int p = 1; p <= max_power; ++p) {
        if (power.has_full_column()) return true;
        if (p < max_power) power.multiply(support);
    }
    return false;
}

bool same_support(const TrustMatrix& a, const TrustMatrix& b) {
    if (a.size() != b.size())
        throw ValidationError("support comparison needs equal dimensions (" +
                              std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        if ((a.rows[i] == 0.0) != (b.rows[i] == 0.0)) return false;
    return true;
}

TrustMatrix generate_convergent(const GenerationConfig& config) {
    if (config.size < 1) throw ValidationError("size must be >= 1");
    if (config.max_power_check < 1) throw ValidationError("max_power_check must be >= 1");
    if (!(config.sparsity >= 0.0 && config.sparsity < 1.0))
        throw ValidationError("sparsity must lie in [0, 1)");
    if (config.max_attempts < 1) throw ValidationError("max_attempts must be >= 1");

    const std::size_t k = config.size;
    Rng rng(config.seed);
    TrustMatrix m;
    m.agents.reserve(k);
    for (std::size_t i = 0; i < k; ++i) m.agents.push_back("A" + std::to_string(i + 1));
    m.rows.resize(k * k);

    for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
        for (std::size_t i = 0; i < k; ++i) {
            double* row = m.rows.data() + i * k;
            double sum = 0.0;
            do {
                sum = 0.0;
                for (std::size_t j = 0; j < k; ++j) {
                    // positive_unit keeps drawn entries exactly nonzero, so a
                    // zero entry always means the sparsity mask fired.
                    row[j] = rng.bernoulli(config.sparsity)
                                 ? 0.0
                                 : static_cast<double>(k) * rng.positive_unit();
                    sum += row[j];
                }
            } while (sum == 0.0);
            for (std::size_t j = 0; j < k; ++j) row[j] /= sum;
        }
        if (can_reach_consensus(m, config.max_power_check)) return m;
    }
    throw ComputeError("no convergent matrix after " + std::to_string(config.max_attempts) +
                       " attempts (size " + std::to_string(k) + ")");
}

}  // namespace concord
