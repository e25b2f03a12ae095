#pragma once

/// @file evolve.hpp
/// @brief The generational loop: variation, evaluation, selection over [P', P].

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "operators.hpp"
#include "population.hpp"
#include "rng.hpp"
#include "tsplib.hpp"

namespace tspga {

struct GenerationRecord {
    std::size_t generation = 0; // 1-based
    TourLength best_so_far = 0;
    TourLength generation_best = 0; // best of the selected population
    double generation_mean = 0.0;   // mean length of the selected population
};

struct RunResult {
    Tour best_tour;
    TourLength best_length = 0;
    std::vector<GenerationRecord> trace;
    std::size_t generations_run = 0;
    /// First generation whose best_so_far equals best_length (0 = initial population).
    std::size_t generation_of_best = 0;
};

/// Selection over the merged pool: the `elitism_count` shortest members
/// (ties broken by pool index) are copied first, the rest is filled by
/// roulette with replacement over the whole pool.
template <DrawSource R>
Population select_next(const Population& merged, const GaConfig& cfg, R& rng) {
    Population next;
    next.members.reserve(cfg.population_size);
    next.lengths.reserve(cfg.population_size);

    if (cfg.elitism_count > 0) {
        std::vector<std::size_t> order(merged.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        const std::size_t elites = std::min(cfg.elitism_count, merged.size());
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(elites),
                          order.end(), [&](std::size_t x, std::size_t y) {
                              return merged.lengths[x] != merged.lengths[y]
                                         ? merged.lengths[x] < merged.lengths[y]
                                         : x < y;
                          });
        for (std::size_t e = 0; e < elites; ++e) {
            next.members.push_back(merged.members[order[e]]);
            next.lengths.push_back(merged.lengths[order[e]]);
        }
    }

    const RouletteWheel wheel(merged.lengths);
    while (next.members.size() < cfg.population_size) {
        const std::size_t k = wheel.spin(rng);
        next.members.push_back(merged.members[k]);
        next.lengths.push_back(merged.lengths[k]);
    }
    return next;
}

/// Runs exactly `cfg.max_generations` generations from `initial` (evaluated
/// here if its cache is empty) and returns the best tour ever evaluated along
/// with a per-generation trace.
template <DrawSource R>
RunResult evolve(const GaConfig& cfg, const DistanceMatrix& dm, Population initial, R& rng) {
    cfg.validate();
    if (initial.size() != cfg.population_size) {
        throw ContractError("evolve: initial population size differs from population_size");
    }
    Population pop = initial.evaluated() ? std::move(initial) : evaluate(std::move(initial), dm);

    RunResult result;
    const std::size_t first_best = pop.best_index();
    result.best_tour = pop.members[first_best];
    result.best_length = pop.lengths[first_best];
    result.trace.reserve(cfg.max_generations);

    for (std::size_t gen = 1; gen <= cfg.max_generations; ++gen) {
        Population children = evaluate(variation(pop, cfg, rng), dm);

        const std::size_t child_best = children.best_index();
        if (children.lengths[child_best] < result.best_length) {
            result.best_length = children.lengths[child_best];
            result.best_tour = children.members[child_best];
            result.generation_of_best = gen;
        }

        Population merged = std::move(children);
        merged.members.insert(merged.members.end(), std::make_move_iterator(pop.members.begin()),
                              std::make_move_iterator(pop.members.end()));
        merged.lengths.insert(merged.lengths.end(), pop.lengths.begin(), pop.lengths.end());
        pop = select_next(merged, cfg, rng);

        const double sum = std::accumulate(pop.lengths.begin(), pop.lengths.end(), 0.0);
        result.trace.push_back(GenerationRecord{
            gen,
            result.best_length,
            *std::min_element(pop.lengths.begin(), pop.lengths.end()),
            sum / static_cast<double>(pop.size()),
        });
    }
    result.generations_run = cfg.max_generations;
    return result;
}

} // namespace tspga
