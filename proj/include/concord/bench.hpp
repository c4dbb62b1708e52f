#pragma once
// Scaling benchmark: generate convergent matrices of increasing size, time
// the consensus iteration at several precisions, emit CSV records.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "concord/kernels.hpp"
#include "concord/trust.hpp"

namespace concord {

struct BenchPlan {
    std::vector<std::size_t> sizes;  // strictly increasing
    std::vector<double> epsilons;
    int repetitions = 5;
    std::uint64_t seed = 42;
    int max_steps = 64;
    int max_power_check = 20;
    double sparsity = 0.0;
    kernels::ExecMode mode = kernels::ExecMode::Auto;
    // Test seam: when set, replaces the random generator as the matrix
    // source for each (size, repetition) cell.
    std::function<TrustMatrix(std::size_t size, int repetition)> matrix_source;
};

bool validate_plan(const BenchPlan& plan, std::string* why = nullptr);

struct BenchRecord {
    std::size_t size = 0;
    double epsilon = 0.0;
    int repetition = 0;
    int steps = 0;
    double elapsed_ms = 0.0;  // convergence loop only; generation is excluded
    bool converged = false;
};

// Runs the sweep in (size, epsilon, repetition) order. Matrices are drawn
// from a seed mixed per (size, repetition), so every epsilon of a given
// repetition sees the same matrix and reruns reproduce everything except
// elapsed_ms. Generation failures land in the record as converged=false;
// the sweep never aborts.
std::vector<BenchRecord> run_bench(const BenchPlan& plan);

struct BenchSummary {
    std::size_t size = 0;
    double epsilon = 0.0;
    double mean_steps = 0.0;
    double mean_elapsed_ms = 0.0;
};

// Arithmetic means grouped by (size, epsilon), rows ordered by size then
// epsilon. ValidationError on empty input.
std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records);

// Header: size,epsilon,repetition,steps,elapsed_ms,converged
void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records);
// Header: size,epsilon,mean_steps,mean_elapsed_ms
void write_summary_csv(std::ostream& out, const std::vector<BenchSummary>& summaries);

// Sizes 50..500 step 50, epsilons {1e-3, 1e-5}, five repetitions.
BenchPlan desk_scale_plan();
// Sizes 50..2000 step 50, otherwise identical.
BenchPlan full_scale_plan();

}  // namespace concord
