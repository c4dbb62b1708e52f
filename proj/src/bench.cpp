#include "concord/bench.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <string>

#include "concord/consensus.hpp"
#include "concord/errors.hpp"
#include "concord/rng.hpp"

namespace concord {

bool validate_plan(const BenchPlan& plan, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    if (plan.sizes.empty()) return fail("no sizes");
    for (std::size_t i = 0; i < plan.sizes.size(); ++i) {
        if (plan.sizes[i] < 1) return fail("sizes must be >= 1");
        if (i > 0 && plan.sizes[i] <= plan.sizes[i - 1])
            return fail("sizes must be strictly increasing");
    }
    if (plan.epsilons.empty()) return fail("no epsilons");
    for (double eps : plan.epsilons)
        if (!(eps > 0.0) || !std::isfinite(eps)) return fail("epsilons must be > 0");
    if (plan.repetitions < 1) return fail("repetitions must be >= 1");
    if (plan.max_steps < 1) return fail("max_steps must be >= 1");
    if (plan.max_power_check < 1) return fail("max_power_check must be >= 1");
    if (!(plan.sparsity >= 0.0 && plan.sparsity < 1.0))
        return fail("sparsity must lie in [0, 1)");
    if (why) why->clear();
    return true;
}

std::vector<BenchRecord> run_bench(const BenchPlan& plan) {
    std::string why;
    if (!validate_plan(plan, &why)) throw ValidationError("invalid bench plan: " + why);

    using clock = std::chrono::steady_clock;
    std::vector<BenchRecord> records;
    records.reserve(plan.sizes.size() * plan.epsilons.size() *
                    static_cast<std::size_t>(plan.repetitions));

    {
        // One untimed multiply through the dispatching kernel so one-time
        // costs (OpenMP pool spin-up on the first parallel region) never
        // land inside a timed repetition mid-sweep.
        constexpr std::size_t warm = 160;
        const std::vector<double> a(warm * warm, 1.0 / static_cast<double>(warm));
        std::vector<double> out(warm * warm);
        kernels::multiply(a.data(), a.data(), out.data(), warm, plan.mode);
    }

    for (std::size_t size : plan.sizes) {
        // One matrix per repetition, shared by every epsilon, so precision is
        // the only thing that changes between the epsilon passes.
        std::vector<TrustMatrix> matrices(plan.repetitions);
        std::vector<bool> generated(plan.repetitions, false);
        for (int rep = 0; rep < plan.repetitions; ++rep) {
            try {
                if (plan.matrix_source) {
                    matrices[rep] = plan.matrix_source(size, rep);
                } else {
                    GenerationConfig cfg;
                    cfg.size = size;
                    cfg.seed = mix_seed(plan.seed, size, static_cast<std::uint64_t>(rep));
                    cfg.max_power_check = plan.max_power_check;
                    cfg.sparsity = plan.sparsity;
                    matrices[rep] = generate_convergent(cfg);
                }
                generated[rep] = true;
            } catch (const ComputeError&) {
                generated[rep] = false;  // recorded below, sweep continues
            }
        }
        for (double eps : plan.epsilons) {
            for (int rep = 0; rep < plan.repetitions; ++rep) {
                BenchRecord record;
                record.size = size;
                record.epsilon = eps;
                record.repetition = rep;
                if (generated[rep]) {
                    const auto start = clock::now();
                    auto power = power_consensus(matrices[rep], eps, plan.max_steps, plan.mode);
                    const auto stop = clock::now();
                    record.steps = power.steps;
                    record.elapsed_ms =
                        std::chrono::duration<double, std::milli>(stop - start).count();
                    record.converged = power.converged;
                }
                records.push_back(record);
            }
        }
    }
    return records;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records) {
    if (records.empty()) throw ValidationError("cannot summarize zero records");
    struct Accum {
        double steps = 0.0, elapsed = 0.0;
        int count = 0;
    };
    std::map<std::pair<std::size_t, double>, Accum> groups;
    for (const auto& r : records) {
        auto& g = groups[{r.size, r.epsilon}];
        g.steps += r.steps;
        g.elapsed += r.elapsed_ms;
        ++g.count;
    }
    std::vector<BenchSummary> out;
    out.reserve(groups.size());
    for (const auto& [key, g] : groups)
        out.push_back({key.first, key.second, g.steps / g.count, g.elapsed / g.count});
    return out;
}

namespace {

// Shortest decimal that round-trips to the same double.
std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "size,epsilon,repetition,steps,elapsed_ms,converged\n";
    for (const auto& r : records)
        out << r.size << ',' << format_double(r.epsilon) << ',' << r.repetition << ','
            << r.steps << ',' << format_double(r.elapsed_ms) << ','
            << (r.converged ? "true" : "false") << '\n';
}

void write_summary_csv(std::ostream& out, const std::vector<BenchSummary>& summaries) {
    out << "size,epsilon,mean_steps,mean_elapsed_ms\n";
    for (const auto& s : summaries)
        out << s.size << ',' << format_double(s.epsilon) << ',' << format_double(s.mean_steps)
            << ',' << format_double(s.mean_elapsed_ms) << '\n';
}

namespace {

BenchPlan scale_plan(std::size_t max_size) {
    BenchPlan plan;
    for (std::size_t size = 50; size <= max_size; size += 50) plan.sizes.push_back(size);
    plan.epsilons = {1e-3, 1e-5};
    plan.repetitions = 5;
    return plan;
}

}  // namespace

BenchPlan desk_scale_plan() { return scale_plan(500); }

BenchPlan full_scale_plan() { return scale_plan(2000); }

}  // namespace concord
