#pragma once
// Row-stochastic trust matrices: validation, support-graph analysis,
// consensus-reachability checking and seeded random generation.

#include <cstdint>
#include <string>
#include <vector>

namespace concord {

// rows[i*k + j] is the weight agent i places on agent j's opinion.
struct TrustMatrix {
    std::vector<std::string> agents;
    std::vector<double> rows;  // row-major k*k

    std::size_t size() const noexcept { return agents.size(); }
    double at(std::size_t i, std::size_t j) const { return rows[i * agents.size() + j]; }
    double& at(std::size_t i, std::size_t j) { return rows[i * agents.size() + j]; }

    friend bool operator==(const TrustMatrix&, const TrustMatrix&) = default;
};

inline constexpr double kRowSumTolerance = 1e-9;

// Builds a matrix from nested rows; agents default to "A1".."Ak".
// ValidationError on empty or non-square input.
TrustMatrix make_trust_matrix(std::vector<std::vector<double>> rows);
TrustMatrix make_trust_matrix(std::vector<std::string> agents,
                              std::vector<std::vector<double>> rows);

// True iff every entry lies in [0, 1] and every row sums to 1 within
// kRowSumTolerance. On failure `why`, when given, names the first bad row.
bool validate(const TrustMatrix& m, std::string* why = nullptr);

// Structure of the directed graph with an edge i -> j iff m[i][j] > 0.
struct TrustGraphAnalysis {
    std::vector<std::vector<int>> sccs;  // partition of {0..k-1}
    std::vector<bool> closed;            // per SCC: no positive entry leaving it
    std::vector<int> periods;            // per SCC: gcd of internal cycle lengths, 0 if acyclic
    bool aperiodic = false;              // every closed SCC has period 1
};

TrustGraphAnalysis analyze_graph(const TrustMatrix& m);

// True iff some power V^m, 1 <= m <= max_power, has a strictly positive
// column. Computed on boolean support matrices so zero patterns cannot
// drift through floating-point underflow.
bool can_reach_consensus(const TrustMatrix& m, int max_power);

// Equal zero patterns; an entry is zero iff it is exactly 0.0.
bool same_support(const TrustMatrix& a, const TrustMatrix& b);

struct GenerationConfig {
    std::size_t size = 1;
    std::uint64_t seed = 0;
    int max_power_check = 20;
    // Chance of forcing an entry to zero before normalization; 0 keeps the
    // generated matrix dense.
    double sparsity = 0.0;
    int max_attempts = 1000;
};

// Draws each row uniformly from [0, size)^size, applies the sparsity mask,
// redraws all-zero rows, normalizes, and accepts the matrix only once
// can_reach_consensus passes. Deterministic per seed. ComputeError when the
// attempt budget runs out.
TrustMatrix generate_convergent(const GenerationConfig& config);

}  // namespace concord
