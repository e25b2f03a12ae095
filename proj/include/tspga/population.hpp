#pragma once

/// @file population.hpp
/// @brief GA configuration, populations, and the length-to-fitness transform.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "tsplib.hpp"

namespace tspga {

enum class MutationOperator {
    Rsm,  // reverse sequence mutation
    Psm,  // partial shuffle mutation
    Hprm, // hybrid of PSM and RSM
};

inline std::string_view to_string(MutationOperator op) {
    switch (op) {
    case MutationOperator::Rsm:
        return "rsm";
    case MutationOperator::Psm:
        return "psm";
    case MutationOperator::Hprm:
        return "hprm";
    }
    return "?";
}

/// Case-insensitive inverse of `to_string`.
inline std::optional<MutationOperator> parse_mutation_operator(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "rsm") {
        return MutationOperator::Rsm;
    }
    if (lower == "psm") {
        return MutationOperator::Psm;
    }
    if (lower == "hprm") {
        return MutationOperator::Hprm;
    }
    return std::nullopt;
}

struct GaConfig {
    std::size_t population_size = 100;
    std::size_t max_generations = 1000;
    double crossover_rate = 0.9;
    double mutation_rate = 0.05; // Pm, used by PSM and HPRM
    std::size_t elitism_count = 1;
    MutationOperator mutation_operator = MutationOperator::Hprm;
    std::uint64_t seed = 0;

    void validate() const {
        if (population_size == 0) {
            throw ContractError("population_size must be positive");
        }
        if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
            throw ContractError("crossover_rate must lie in [0, 1]");
        }
        if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
            throw ContractError("mutation_rate must lie in [0, 1]");
        }
        if (elitism_count >= population_size) {
            throw ContractError("elitism_count must be smaller than population_size");
        }
    }
};

/// Tours plus a parallel cache of their lengths. `lengths` is empty until
/// `evaluate` fills it.
struct Population {
    std::vector<Tour> members;
    std::vector<TourLength> lengths;

    std::size_t size() const noexcept { return members.size(); }
    bool evaluated() const noexcept { return !members.empty() && lengths.size() == members.size(); }
    std::size_t dimension() const noexcept { return members.empty() ? 0 : members.front().size(); }

    /// Index of the shortest member (lowest index on ties). Requires `evaluated()`.
    std::size_t best_index() const {
        if (!evaluated()) {
            throw ContractError("best_index: population is not evaluated");
        }
        return static_cast<std::size_t>(
            std::min_element(lengths.begin(), lengths.end()) - lengths.begin());
    }
};

/// Uniform random permutation of 0..n-1 (Fisher-Yates, drawing j in [0, i]
/// for i = n-1 down to 1).
template <DrawSource R>
Tour random_tour(std::size_t n, R& rng) {
    if (n < 2) {
        throw ContractError("random_tour: n must be at least 2");
    }
    Tour t(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = static_cast<City>(i);
    }
    for (std::size_t i = n - 1; i > 0; --i) {
        std::swap(t[i], t[rng.uniform_index(0, i)]);
    }
    return t;
}

template <DrawSource R>
Population init_population(const GaConfig& cfg, std::size_t n, R& rng) {
    cfg.validate();
    Population pop;
    pop.members.reserve(cfg.population_size);
    for (std::size_t k = 0; k < cfg.population_size; ++k) {
        pop.members.push_back(random_tour(n, rng));
    }
    return pop;
}

/// Fills the length cache. Every member is checked to be a permutation of the
/// matrix dimension.
inline Population evaluate(Population pop, const DistanceMatrix& dm) {
    if (pop.members.empty()) {
        throw ContractError("evaluate: empty population");
    }
    pop.lengths.resize(pop.members.size());
    for (std::size_t k = 0; k < pop.members.size(); ++k) {
        pop.lengths[k] = tour_length(dm, pop.members[k]);
    }
    return pop;
}

/// Roulette mass of a tour: 1 / length.
inline double fitness_of(TourLength length) {
    if (length <= 0) {
        throw ContractError("fitness_of: tour length must be positive");
    }
    return 1.0 / static_cast<double>(length);
}

} // namespace tspga
