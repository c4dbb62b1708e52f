#include "concord/kernels.hpp"

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace concord::kernels {

namespace {

// Threshold below which the fork-join overhead outweighs the row split.
constexpr std::size_t kParallelCutoff = 128;

// One output row in i-t-j order: the inner loop walks both b and out
// contiguously, and the accumulation order per element is fixed, which keeps
// serial and parallel results bit-for-bit identical.
inline void multiply_row(const double* a, const double* b, double* out, std::size_t k,
                         std::size_t i) {
    double* out_row = out + i * k;
    std::fill(out_row, out_row + k, 0.0);
    for (std::size_t t = 0; t < k; ++t) {
        const double a_it = a[i * k + t];
        const double* b_row = b + t * k;
        for (std::size_t j = 0; j < k; ++j) out_row[j] += a_it * b_row[j];
    }
}

}  // namespace

void multiply_serial(const double* a, const double* b, double* out, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) multiply_row(a, b, out, k, i);
}

void multiply_parallel(const double* a, const double* b, double* out, std::size_t k) {
#ifdef _OPENMP
    const std::int64_t rows = static_cast<std::int64_t>(k);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i)
        multiply_row(a, b, out, k, static_cast<std::size_t>(i));
#else
    multiply_serial(a, b, out, k);
#endif
}

void multiply(const double* a, const double* b, double* out, std::size_t k, ExecMode mode) {
    const bool parallel =
        mode == ExecMode::Parallel || (mode == ExecMode::Auto && k >= kParallelCutoff);
    if (parallel)
        multiply_parallel(a, b, out, k);
    else
        multiply_serial(a, b, out, k);
}

double column_spread(const double* m, std::size_t k) {
    if (k == 0) return 0.0;
    double spread = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        double mn = m[j], mx = m[j];
        for (std::size_t i = 1; i < k; ++i) {
            const double v = m[i * k + j];
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        spread = std::max(spread, mx - mn);
    }
    return spread;
}

bool openmp_enabled() noexcept {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace concord::kernels
