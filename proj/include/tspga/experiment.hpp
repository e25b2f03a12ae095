#pragma once

/// @file experiment.hpp
/// @brief Paired operator comparison: every operator arm evolves from the same
/// initial populations with the same per-run evolution streams, so arms differ
/// only in the mutation operator.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "evolve.hpp"
#include "population.hpp"
#include "rng.hpp"
#include "tsplib.hpp"

namespace tspga {

struct Summary {
    TourLength best = 0;
    TourLength worst = 0;
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation, 0 for a single value
};

inline Summary summarize(std::span<const TourLength> values) {
    if (values.empty()) {
        throw ContractError("summarize: empty list");
    }
    Summary s;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.best = *lo;
    s.worst = *hi;
    const double n = static_cast<double>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (TourLength v : values) {
            const double d = static_cast<double>(v) - s.mean;
            ss += d * d;
        }
        s.stddev = std::sqrt(ss / (n - 1.0));
    }
    // Guard the order statistics against rounding in the mean.
    s.mean = std::clamp(s.mean, static_cast<double>(s.best), static_cast<double>(s.worst));
    return s;
}

/// FNV-1a over the city sequence of every member.
inline std::uint64_t population_hash(const Population& pop) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const Tour& t : pop.members) {
        for (City c : t) {
            for (int byte = 0; byte < 4; ++byte) {
                h ^= (c >> (8 * byte)) & 0xffU;
                h *= 0x100000001b3ULL;
            }
        }
        h ^= 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}

struct ExperimentConfig {
    GaConfig ga; // mutation_operator and seed are overridden per arm/run
    std::vector<MutationOperator> operators{MutationOperator::Rsm, MutationOperator::Psm,
                                            MutationOperator::Hprm};
    std::size_t runs = 50;
    std::filesystem::path instance_path;
    std::filesystem::path output_dir = "out";
    std::uint64_t root_seed = 0;
    std::size_t jobs = 1;

    void validate() const {
        ga.validate();
        if (runs == 0) {
            throw ContractError("runs must be at least 1");
        }
        if (operators.empty()) {
            throw ContractError("operator list is empty");
        }
        for (std::size_t i = 0; i < operators.size(); ++i) {
            for (std::size_t j = i + 1; j < operators.size(); ++j) {
                if (operators[i] == operators[j]) {
                    throw ContractError("duplicate operator '" +
                                        std::string(to_string(operators[i])) + "'");
                }
            }
        }
    }
};

/// Initial population for run `run` of an experiment rooted at `root_seed`.
inline Population initial_population_for_run(const GaConfig& ga, std::size_t n,
                                             std::uint64_t root_seed, std::size_t run) {
    RngStream rng(derive_seed(root_seed, run, StreamPurpose::InitialPopulation));
    return init_population(ga, n, rng);
}

/// One complete GA run seeded like run 0 of an experiment with root `ga.seed`.
inline RunResult solve(const GaConfig& ga, const DistanceMatrix& dm) {
    Population initial = initial_population_for_run(ga, dm.size(), ga.seed, 0);
    RngStream rng(derive_seed(ga.seed, 0, StreamPurpose::Evolution));
    return evolve(ga, dm, std::move(initial), rng);
}

struct ArmResult {
    MutationOperator op = MutationOperator::Hprm;
    std::vector<RunResult> runs;
    std::vector<std::uint64_t> initial_hashes; // hash of the population each run started from
};

struct OperatorSummary {
    MutationOperator op = MutationOperator::Hprm;
    Summary stats;
    double mean_generations_to_best = 0.0;
    std::vector<TourLength> final_bests;
};

struct ComparisonReport {
    std::string instance_name;
    std::size_t runs = 0;
    std::uint64_t root_seed = 0;
    GaConfig ga;
    std::vector<OperatorSummary> operators;
    std::vector<std::uint64_t> initial_population_hashes;
    std::string trace_file; // convergence CSV, relative to the output directory
};

struct ComparisonResult {
    ComparisonReport report;
    std::vector<ArmResult> arms;
};

/// Runs every (operator, run) cell. Cells may execute on `cfg.jobs` threads;
/// results land in fixed slots so the outcome does not depend on scheduling.
inline ComparisonResult compare_operators(const ExperimentConfig& cfg, const DistanceMatrix& dm,
                                          std::string instance_name = {}) {
    cfg.validate();
    const std::size_t n = dm.size();

    std::vector<Population> initials;
    initials.reserve(cfg.runs);
    for (std::size_t r = 0; r < cfg.runs; ++r) {
        initials.push_back(evaluate(initial_population_for_run(cfg.ga, n, cfg.root_seed, r), dm));
    }

    ComparisonResult out;
    out.arms.resize(cfg.operators.size());
    for (std::size_t a = 0; a < cfg.operators.size(); ++a) {
        out.arms[a].op = cfg.operators[a];
        out.arms[a].runs.resize(cfg.runs);
        out.arms[a].initial_hashes.resize(cfg.runs);
    }

    const std::size_t cells = cfg.operators.size() * cfg.runs;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t cell = next++; cell < cells; cell = next++) {
            const std::size_t a = cell / cfg.runs;
            const std::size_t r = cell % cfg.runs;
            GaConfig ga = cfg.ga;
            ga.mutation_operator = cfg.operators[a];
            Population start = initials[r];
            out.arms[a].initial_hashes[r] = population_hash(start);
            RngStream rng(derive_seed(cfg.root_seed, r, StreamPurpose::Evolution));
            out.arms[a].runs[r] = evolve(ga, dm, std::move(start), rng);
        }
    };

    const std::size_t jobs = std::clamp<std::size_t>(cfg.jobs, 1, cells);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (std::size_t j = 0; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
    }

    ComparisonReport& rep = out.report;
    rep.instance_name = std::move(instance_name);
    rep.runs = cfg.runs;
    rep.root_seed = cfg.root_seed;
    rep.ga = cfg.ga;
    for (const Population& p : initials) {
        rep.initial_population_hashes.push_back(population_hash(p));
    }
    for (const ArmResult& arm : out.arms) {
        OperatorSummary s;
        s.op = arm.op;
        double gens = 0.0;
        for (const RunResult& rr : arm.runs) {
            s.final_bests.push_back(rr.best_length);
            gens += static_cast<double>(rr.generation_of_best);
        }
        s.stats = summarize(s.final_bests);
        s.mean_generations_to_best = gens / static_cast<double>(arm.runs.size());
        rep.operators.push_back(std::move(s));
    }
    return out;
}

namespace detail {

/// Shortest round-trip decimal form; independent of locale and stream state.
inline std::string format_real(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace detail

/// Writes `operator,run,generation,best_so_far,gen_best,gen_mean` rows sorted
/// by (operator name, run, generation). Runs are numbered from 0.
inline void write_convergence_csv(std::span<const ArmResult> arms, std::ostream& os) {
    std::vector<const ArmResult*> sorted;
    for (const ArmResult& a : arms) {
        sorted.push_back(&a);
    }
    std::sort(sorted.begin(), sorted.end(), [](const ArmResult* x, const ArmResult* y) {
        return to_string(x->op) < to_string(y->op);
    });
    os << "operator,run,generation,best_so_far,gen_best,gen_mean\n";
    for (const ArmResult* arm : sorted) {
        const auto name = to_string(arm->op);
        for (std::size_t r = 0; r < arm->runs.size(); ++r) {
            for (const GenerationRecord& g : arm->runs[r].trace) {
                os << name << ',' << r << ',' << g.generation << ',' << g.best_so_far << ','
                   << g.generation_best << ',' << detail::format_real(g.generation_mean) << '\n';
            }
        }
    }
}

inline void emit_convergence_csv(std::span<const ArmResult> arms,
                                 const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    write_convergence_csv(arms, os);
    if (!os) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

inline nlohmann::ordered_json report_to_json(const ComparisonReport& rep) {
    nlohmann::ordered_json j;
    j["instance"] = rep.instance_name;
    j["runs"] = rep.runs;
    j["root_seed"] = rep.root_seed;
    j["ga"] = {
        {"population_size", rep.ga.population_size},
        {"max_generations", rep.ga.max_generations},
        {"crossover_rate", rep.ga.crossover_rate},
        {"mutation_rate", rep.ga.mutation_rate},
        {"elitism_count", rep.ga.elitism_count},
    };
    j["trace_file"] = rep.trace_file;
    j["initial_population_hashes"] = rep.initial_population_hashes;
    auto& ops = j["operators"] = nlohmann::ordered_json::array();
    for (const OperatorSummary& s : rep.operators) {
        ops.push_back({
            {"operator", std::string(to_string(s.op))},
            {"best", s.stats.best},
            {"worst", s.stats.worst},
            {"mean", s.stats.mean},
            {"stddev", s.stats.stddev},
            {"mean_generations_to_best", s.mean_generations_to_best},
            {"final_bests", s.final_bests},
        });
    }
    return j;
}

inline void write_report_json(const ComparisonReport& rep, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    os << report_to_json(rep).dump(2) << '\n';
    if (!os) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

/// Fixed-width summary, one row per operator in configuration order.
inline void print_summary_table(const ComparisonReport& rep, std::ostream& os) {
    os << std::left << std::setw(10) << "operator" << std::right << std::setw(10) << "best"
       << std::setw(10) << "worst" << std::setw(12) << "mean" << std::setw(10) << "stddev"
       << std::setw(14) << "gens_to_best" << '\n';
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << std::fixed << std::setprecision(2);
    for (const OperatorSummary& s : rep.operators) {
        os << std::left << std::setw(10) << to_string(s.op) << std::right << std::setw(10)
           << s.stats.best << std::setw(10) << s.stats.worst << std::setw(12) << s.stats.mean
           << std::setw(10) << s.stats.stddev << std::setw(14) << s.mean_generations_to_best
           << '\n';
    }
    os.flags(flags);
    os.precision(prec);
}

inline constexpr const char* kConvergenceCsvName = "convergence.csv";
inline constexpr const char* kReportJsonName = "report.json";

/// Loads the instance, runs the comparison and writes `convergence.csv` and
/// `report.json` into `cfg.output_dir` (created if missing).
inline ComparisonReport run_comparison(const ExperimentConfig& cfg) {
    cfg.validate();
    const Instance inst = load_instance(cfg.instance_path);
    const DistanceMatrix dm = build_distance_matrix(inst);
    ComparisonResult result = compare_operators(cfg, dm, inst.name);

    std::filesystem::create_directories(cfg.output_dir);
    result.report.trace_file = kConvergenceCsvName;
    emit_convergence_csv(result.arms, cfg.output_dir / kConvergenceCsvName);
    write_report_json(result.report, cfg.output_dir / kReportJsonName);
    return result.report;
}

} // namespace tspga
