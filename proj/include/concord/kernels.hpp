#pragma once
// Dense square-matrix kernels behind the consensus iteration. The serial
// variant is the reference; the OpenMP variant splits rows across threads
// while keeping the per-element operation order identical, so both produce
// bit-for-bit equal results regardless of thread count.

#include <cstddef>

namespace concord::kernels {

enum class ExecMode { Serial, Parallel, Auto };

// out = a * b, row-major k-by-k. `out` must not alias `a` or `b`.
void multiply_serial(const double* a, const double* b, double* out, std::size_t k);
void multiply_parallel(const double* a, const double* b, double* out, std::size_t k);

// Auto switches to the parallel kernel once the matrix is large enough to
// amortize the fork-join cost.
void multiply(const double* a, const double* b, double* out, std::size_t k,
              ExecMode mode = ExecMode::Auto);

// Max over columns of (column max - column min); 0 for k = 0.
double column_spread(const double* m, std::size_t k);

bool openmp_enabled() noexcept;
int max_threads() noexcept;

}  // namespace concord::kernels
