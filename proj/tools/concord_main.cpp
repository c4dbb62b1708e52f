// Command-line front end: check / filter / consensus / aggregate /
// gen-matrix / bench over the JSON and CSV formats of the library.
//
// Exit codes: 0 success, 1 a checked property is unsatisfied, 2 bad input
// (flags, files, validation), 3 computational failure (no convergence,
// generation budget).

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "concord/argumentation.hpp"
#include "concord/bench.hpp"
#include "concord/consensus.hpp"
#include "concord/errors.hpp"
#include "concord/io.hpp"
#include "concord/trust.hpp"

namespace io = concord::io;
using concord::kernels::ExecMode;

namespace {

std::vector<concord::WeightingProperty> parse_properties(
    const std::vector<std::string>& names) {
    std::vector<concord::WeightingProperty> out;
    for (const auto& name : names) {
        auto p = concord::property_from_name(name);
        if (!p) throw concord::ValidationError("unknown property '" + name + "'");
        out.push_back(*p);
    }
    return out;
}

const concord::WeightingFunction& select_weighting(
    const std::vector<concord::WeightingFunction>& ws, const std::string& requested) {
    if (!requested.empty()) {
        for (const auto& w : ws)
            if (w.name == requested) return w;
        throw concord::ValidationError("no weighting named '" + requested + "'");
    }
    if (ws.size() == 1) return ws.front();
    throw concord::ValidationError("the weightings file holds " + std::to_string(ws.size()) +
                                   " entries; pick one with --weighting");
}

// Inclusive a:b:step range or a plain comma list.
std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    auto parse_one = [](const std::string& piece) {
        try {
            const long v = std::stol(piece);
            if (v < 1) throw concord::ValidationError("sizes must be >= 1");
            return static_cast<std::size_t>(v);
        } catch (const std::logic_error&) {
            throw concord::ValidationError("cannot parse size '" + piece + "'");
        }
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (std::size_t pos; (pos = text.find(':', start)) != std::string::npos;
             start = pos + 1)
            parts.push_back(text.substr(start, pos - start));
        parts.push_back(text.substr(start));
        if (parts.size() != 3)
            throw concord::ValidationError("size range must be first:last:step");
        const std::size_t first = parse_one(parts[0]);
        const std::size_t last = parse_one(parts[1]);
        const std::size_t step = parse_one(parts[2]);
        for (std::size_t v = first; v <= last; v += step) out.push_back(v);
        return out;
    }
    std::size_t start = 0;
    for (std::size_t pos; (pos = text.find(',', start)) != std::string::npos; start = pos + 1)
        out.push_back(parse_one(text.substr(start, pos - start)));
    out.push_back(parse_one(text.substr(start)));
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    io::write_file(path, text);
}

int run(int argc, char** argv) {
    CLI::App app{"Trust-weighted consensus over argument weighting functions"};
    app.require_subcommand(1);

    const std::map<std::string, ExecMode> mode_names{
        {"serial", ExecMode::Serial}, {"parallel", ExecMode::Parallel}, {"auto", ExecMode::Auto}};

    std::string af_path, weightings_path, profile_path, matrix_path, result_path, out_path;
    std::string summary_path, weighting_name, sizes_text;
    std::vector<std::string> property_names;
    std::vector<double> epsilons;
    double epsilon = 1e-9, tie_tolerance = 1e-9, sparsity = 0.0;
    int max_steps = 64, max_power_check = 20, max_attempts = 1000, reps = 5;
    std::size_t size = 1;
    std::uint64_t seed = 0;
    bool full_sweep = false;
    ExecMode mode = ExecMode::Auto;
    int exit_code = 0;

    auto* check = app.add_subcommand("check", "Evaluate properties of one weighting");
    check->add_option("--af", af_path, "Argumentation framework JSON")->required();
    check->add_option("--weightings", weightings_path, "Weightings JSON")->required();
    check->add_option("--weighting", weighting_name, "Name to pick from the weightings file");
    check->add_option("--properties", property_names, "Comma-separated property names")
        ->delimiter(',');
    check->callback([&] {
        const auto af = io::parse_af(io::read_file(af_path));
        const auto ws = io::parse_weightings(io::read_file(weightings_path));
        const auto& w = select_weighting(ws, weighting_name);
        bool all = true;
        for (auto p : parse_properties(property_names)) {
            const bool ok = concord::check_property(af, w, p);
            all = all && ok;
            std::cout << concord::property_name(p) << ": " << (ok ? "true" : "false") << "\n";
        }
        exit_code = all ? 0 : 1;
    });

    auto* filter = app.add_subcommand("filter", "Keep the weightings satisfying properties");
    filter->add_option("--af", af_path, "Argumentation framework JSON")->required();
    filter->add_option("--weightings", weightings_path, "Candidate weightings JSON")->required();
    filter->add_option("--properties", property_names, "Comma-separated property names")
        ->delimiter(',');
    filter->add_option("-o,--out", out_path, "Filtered weightings JSON output");
    filter->callback([&] {
        const auto af = io::parse_af(io::read_file(af_path));
        const auto ws = io::parse_weightings(io::read_file(weightings_path));
        const auto lib = concord::filter_library(af, ws, parse_properties(property_names));
        for (const auto& w : lib.weightings) std::cout << w.name << "\n";
        if (!out_path.empty()) write_text(out_path, io::weightings_to_json(lib.weightings));
    });

    auto* consensus = app.add_subcommand("consensus", "Run the full consensus pipeline");
    consensus->add_option("--af", af_path, "Argumentation framework JSON")->required();
    consensus->add_option("--weightings", weightings_path, "Weightings JSON")->required();
    consensus->add_option("--profile", profile_path, "Scoring profile JSON")->required();
    consensus->add_option("--matrix", matrix_path, "Trust matrix JSON")->required();
    consensus->add_option("--epsilon", epsilon, "Convergence precision")
        ->capture_default_str();
    consensus->add_option("--tie-tolerance", tie_tolerance, "Output-set tie tolerance")
        ->capture_default_str();
    consensus->add_option("--max-steps", max_steps, "Squaring step cap")
        ->capture_default_str();
    consensus->add_option("--mode", mode, "Kernel execution mode")
        ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));
    consensus->add_option("-o,--out", result_path, "Result JSON output")->required();
    consensus->callback([&] {
        const auto af = io::parse_af(io::read_file(af_path));
        const auto ws = io::parse_weightings(io::read_file(weightings_path));
        const auto profile = io::parse_profile(io::read_file(profile_path));
        const auto matrix = io::parse_trust_matrix(io::read_file(matrix_path));
        const auto result = concord::run_consensus(af, ws, profile, matrix, epsilon,
                                                   tie_tolerance, max_steps, mode);
        write_text(result_path, io::result_to_json(result));
        if (result.converged) {
            std::cout << "converged after " << result.steps << " squarings; output set:";
            for (const auto& name : result.output_set) std::cout << " " << name;
            std::cout << "\n";
        } else {
            std::cerr << "no consensus within " << max_steps << " squarings\n";
            exit_code = 3;
        }
    });

    auto* aggregate = app.add_subcommand("aggregate",
                                         "Recompute the aggregated weighting from a result");
    aggregate->add_option("--af", af_path, "Argumentation framework JSON")->required();
    aggregate->add_option("--weightings", weightings_path, "Weightings JSON")->required();
    aggregate->add_option("--result", result_path, "Consensus result JSON")->required();
    aggregate->add_option("-o,--out", out_path, "Aggregated weighting JSON output")->required();
    aggregate->callback([&] {
        const auto af = io::parse_af(io::read_file(af_path));
        const auto ws = io::parse_weightings(io::read_file(weightings_path));
        const auto result = io::parse_result(io::read_file(result_path));
        if (result.consensus_scores.empty())
            throw concord::ValidationError(
                "the result holds no consensus scores (run did not converge?)");
        const auto wstar = concord::aggregate_weighting(af, ws, result.consensus_scores);
        write_text(out_path, io::weighting_to_json(wstar));
    });

    auto* gen = app.add_subcommand("gen-matrix", "Generate a convergent trust matrix");
    gen->add_option("--size", size, "Number of agents")->required();
    gen->add_option("--seed", seed, "Random seed")->capture_default_str();
    gen->add_option("--sparsity", sparsity, "Chance of zeroing an entry")
        ->capture_default_str();
    gen->add_option("--max-power-check", max_power_check, "Reachability power bound")
        ->capture_default_str();
    gen->add_option("--max-attempts", max_attempts, "Regeneration budget")
        ->capture_default_str();
    gen->add_option("-o,--out", out_path, "Trust matrix JSON output")->required();
    gen->callback([&] {
        concord::GenerationConfig cfg;
        cfg.size = size;
        cfg.seed = seed;
        cfg.max_power_check = max_power_check;
        cfg.sparsity = sparsity;
        cfg.max_attempts = max_attempts;
        write_text(out_path, io::trust_matrix_to_json(concord::generate_convergent(cfg)));
    });

    auto* bench = app.add_subcommand("bench", "Time the consensus iteration across sizes");
    bench->add_option("--sizes", sizes_text,
                      "Comma list (50,100) or inclusive range first:last:step");
    bench->add_option("--eps", epsilons, "Comma-separated precisions")->delimiter(',');
    bench->add_option("--reps", reps, "Repetitions per size")->capture_default_str();
    auto* bench_seed = bench->add_option("--seed", seed, "Base seed");
    bench->add_option("--sparsity", sparsity, "Generator sparsity")->capture_default_str();
    bench->add_option("--max-steps", max_steps, "Squaring step cap")->capture_default_str();
    bench->add_option("--max-power-check", max_power_check, "Reachability power bound")
        ->capture_default_str();
    bench->add_option("--mode", mode, "Kernel execution mode")
        ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));
    bench->add_flag("--full", full_sweep, "Sweep sizes 50..2000 instead of 50..500");
    bench->add_option("-o,--out", out_path, "Records CSV output")->required();
    bench->add_option("--summary", summary_path, "Summary CSV output");
    bench->callback([&] {
        concord::BenchPlan plan =
            full_sweep ? concord::full_scale_plan() : concord::desk_scale_plan();
        if (!sizes_text.empty()) plan.sizes = parse_sizes(sizes_text);
        if (!epsilons.empty()) plan.epsilons = epsilons;
        plan.repetitions = reps;
        if (bench_seed->count() > 0) plan.seed = seed;
        plan.sparsity = sparsity;
        plan.max_steps = max_steps;
        plan.max_power_check = max_power_check;
        plan.mode = mode;
        const auto records = concord::run_bench(plan);
        std::ofstream rec_out(out_path, std::ios::binary | std::ios::trunc);
        if (!rec_out)
            throw concord::ValidationError("cannot write file '" + out_path + "'");
        concord::write_records_csv(rec_out, records);
        if (!summary_path.empty()) {
            std::ofstream sum_out(summary_path, std::ios::binary | std::ios::trunc);
            if (!sum_out)
                throw concord::ValidationError("cannot write file '" + summary_path + "'");
            concord::write_summary_csv(sum_out, concord::summarize(records));
        }
        std::cout << records.size() << " records\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const concord::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const concord::ComputeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
