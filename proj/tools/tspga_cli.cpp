// tspga: solve, compare and validate TSPLIB instances with the GA toolkit.
//
// Exit codes: 0 success, 1 input/parse/I-O error, 2 invalid flags,
// 3 tour is not a valid permutation (validate).

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <tspga/tspga.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitFlags = 2;
constexpr int kExitBadTour = 3;

struct GaFlags {
    std::size_t pop = 100;
    std::size_t generations = 1000;
    double pm = 0.05;
    double crossover_rate = 0.9;
    std::size_t elitism = 1;
    std::optional<std::uint64_t> seed;
};

void add_ga_flags(CLI::App& cmd, GaFlags& f) {
    cmd.add_option("--pop", f.pop, "Population size")->capture_default_str();
    cmd.add_option("--generations", f.generations, "Generations to run")->capture_default_str();
    cmd.add_option("--pm", f.pm, "Mutation probability Pm (PSM, HPRM)")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd.add_option("--crossover-rate", f.crossover_rate, "OX crossover probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd.add_option("--elitism", f.elitism, "Elites copied per generation")->capture_default_str();
    cmd.add_option("--seed", f.seed, "Root seed (random and printed when omitted)");
}

tspga::GaConfig to_config(const GaFlags& f) {
    tspga::GaConfig cfg;
    cfg.population_size = f.pop;
    cfg.max_generations = f.generations;
    cfg.mutation_rate = f.pm;
    cfg.crossover_rate = f.crossover_rate;
    cfg.elitism_count = f.elitism;
    if (f.seed) {
        cfg.seed = *f.seed;
    } else {
        std::random_device rd;
        cfg.seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
    }
    cfg.validate();
    return cfg;
}

tspga::MutationOperator operator_from_flag(const std::string& s) {
    const auto op = tspga::parse_mutation_operator(s);
    if (!op) {
        throw tspga::ContractError("unknown operator '" + s + "' (expected rsm, psm or hprm)");
    }
    return *op;
}

std::string render_tour_line(const tspga::Tour& t) {
    std::ostringstream ss;
    for (std::size_t k = 0; k < t.size(); ++k) {
        ss << (k ? " " : "") << t[k] + 1;
    }
    return ss.str();
}

void write_single_trace(const tspga::RunResult& rr, tspga::MutationOperator op,
                        const std::filesystem::path& path) {
    tspga::ArmResult arm;
    arm.op = op;
    arm.runs.push_back(rr);
    tspga::emit_convergence_csv(std::span<const tspga::ArmResult>(&arm, 1), path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genetic algorithm toolkit for the symmetric TSP (RSM, PSM, HPRM mutation)"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read defaults from a TOML/INI file; flags override it");

    // solve
    GaFlags solve_flags;
    std::string solve_instance;
    std::string solve_operator = "hprm";
    std::string solve_trace;
    auto* solve = app.add_subcommand("solve", "Run one GA and print the best tour");
    solve->add_option("instance", solve_instance, "TSPLIB .tsp file")->required();
    solve->add_option("--operator", solve_operator, "Mutation operator: rsm, psm or hprm")
        ->capture_default_str();
    solve->add_option("--trace", solve_trace, "Write the convergence CSV here");
    add_ga_flags(*solve, solve_flags);

    // compare
    GaFlags cmp_flags;
    std::string cmp_instance;
    std::vector<std::string> cmp_operators{"rsm", "psm", "hprm"};
    std::size_t cmp_runs = 50;
    std::string cmp_out = "out";
    std::size_t cmp_jobs = 1;
    auto* compare = app.add_subcommand(
        "compare", "Run every operator on the same initial populations and summarize");
    compare->add_option("instance", cmp_instance, "TSPLIB .tsp file")->required();
    compare->add_option("--operators", cmp_operators, "Comma-separated operator list")
        ->delimiter(',')
        ->capture_default_str();
    compare->add_option("--runs", cmp_runs, "Initial populations (runs per operator)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    compare->add_option("--out", cmp_out, "Output directory for CSV and report")
        ->capture_default_str();
    compare->add_option("--jobs", cmp_jobs, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_ga_flags(*compare, cmp_flags);

    // validate
    std::string val_instance;
    std::string val_tour;
    auto* validate = app.add_subcommand("validate", "Print the length of a tour file");
    validate->add_option("instance", val_instance, "TSPLIB .tsp file")->required();
    validate->add_option("tour", val_tour, "TSPLIB .tour file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitFlags;
    }

    // Flag-derived configuration first, so flag errors map to exit 2.
    tspga::GaConfig solve_cfg;
    tspga::ExperimentConfig exp_cfg;
    try {
        if (*solve) {
            solve_cfg = to_config(solve_flags);
            solve_cfg.mutation_operator = operator_from_flag(solve_operator);
        } else if (*compare) {
            exp_cfg.ga = to_config(cmp_flags);
            exp_cfg.root_seed = exp_cfg.ga.seed;
            exp_cfg.operators.clear();
            for (const auto& s : cmp_operators) {
                exp_cfg.operators.push_back(operator_from_flag(s));
            }
            exp_cfg.runs = cmp_runs;
            exp_cfg.jobs = cmp_jobs;
            exp_cfg.instance_path = cmp_instance;
            exp_cfg.output_dir = cmp_out;
            exp_cfg.validate();
        }
    } catch (const tspga::ContractError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFlags;
    }

    try {
        if (*solve) {
            const auto inst = tspga::load_instance(solve_instance);
            const auto dm = tspga::build_distance_matrix(inst);
            const auto rr = tspga::solve(solve_cfg, dm);
            if (!solve_trace.empty()) {
                write_single_trace(rr, solve_cfg.mutation_operator, solve_trace);
            }
            std::cout << "seed: " << solve_cfg.seed << '\n'
                      << "operator: " << tspga::to_string(solve_cfg.mutation_operator) << '\n'
                      << "best_length: " << rr.best_length << '\n'
                      << "generation_of_best: " << rr.generation_of_best << '\n'
                      << "best_tour: " << render_tour_line(rr.best_tour) << '\n';
            return kExitOk;
        }
        if (*compare) {
            const auto report = tspga::run_comparison(exp_cfg);
            std::cout << "seed: " << exp_cfg.root_seed << '\n'
                      << "instance: " << report.instance_name << '\n'
                      << "runs: " << report.runs << '\n';
            tspga::print_summary_table(report, std::cout);
            return kExitOk;
        }
        if (*validate) {
            const auto inst = tspga::load_instance(val_instance);
            const auto dm = tspga::build_distance_matrix(inst);
            const auto raw = tspga::load_tour_file(val_tour);
            if (const auto problem = tspga::tour_problem(raw, dm.size())) {
                std::cerr << "error: " << val_tour;
                if (problem->line > 0) {
                    std::cerr << ":" << problem->line;
                }
                std::cerr << ": " << problem->message << '\n';
                return kExitBadTour;
            }
            if (raw.dimension && *raw.dimension != dm.size()) {
                std::cerr << "error: " << val_tour << ": DIMENSION " << *raw.dimension
                          << " does not match the instance (" << dm.size() << ")\n";
                return kExitBadTour;
            }
            const auto tour = tspga::tour_from_file(raw);
            std::cout << tspga::tour_length(dm, tour) << '\n';
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
