#pragma once

/// @file operators.hpp
/// @brief Variation operators: RSM, PSM and HPRM mutation, OX crossover,
/// roulette selection, and the generational `variation` step built from them.
///
/// Each randomized operator has an overload taking its random choices
/// explicitly (mutation points, crossover cuts) so traces can be pinned in
/// tests, and one that draws them from a `DrawSource`.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "population.hpp"
#include "rng.hpp"
#include "tsplib.hpp"

namespace tspga {

/// Segment bounds for RSM/HPRM, 0 <= a <= b < n.
struct MutationPoints {
    std::size_t a = 0;
    std::size_t b = 0;
};

/// Crossover cut positions, 0 <= c1 < c2 < n. The segment [c1, c2] is inclusive.
struct CutPoints {
    std::size_t c1 = 0;
    std::size_t c2 = 1;
};

namespace detail {

inline void check_points(MutationPoints pts, std::size_t n) {
    if (pts.a > pts.b || pts.b >= n) {
        throw ContractError("mutation points (" + std::to_string(pts.a) + ", " +
                            std::to_string(pts.b) + ") invalid for tour of size " +
                            std::to_string(n));
    }
}

inline void check_probability(double p, const char* who) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ContractError(std::string(who) + ": probability must lie in [0, 1]");
    }
}

} // namespace detail

/// Uniform over the n(n+1)/2 pairs with a <= b (a == b included).
template <DrawSource R>
MutationPoints draw_mutation_points(std::size_t n, R& rng) {
    if (n == 0) {
        throw ContractError("draw_mutation_points: empty tour");
    }
    std::size_t k = rng.uniform_index(0, n * (n + 1) / 2 - 1);
    for (std::size_t a = 0;; ++a) {
        const std::size_t row = n - a;
        if (k < row) {
            return {a, a + k};
        }
        k -= row;
    }
}

/// Uniform over the n(n-1)/2 pairs with c1 < c2.
template <DrawSource R>
CutPoints draw_cut_points(std::size_t n, R& rng) {
    if (n < 2) {
        throw ContractError("draw_cut_points: tour needs at least 2 cities");
    }
    std::size_t k = rng.uniform_index(0, n * (n - 1) / 2 - 1);
    for (std::size_t c1 = 0;; ++c1) {
        const std::size_t row = n - 1 - c1;
        if (k < row) {
            return {c1, c1 + 1 + k};
        }
        k -= row;
    }
}

/// Reverse sequence mutation: swap t[a], t[b] and move both ends inward
/// while a < b, i.e. reverse the segment [a, b].
inline Tour mutate_rsm(Tour t, MutationPoints pts) {
    detail::check_points(pts, t.size());
    std::size_t a = pts.a;
    std::size_t b = pts.b;
    while (a < b) {
        std::swap(t[a], t[b]);
        ++a;
        --b;
    }
    return t;
}

template <DrawSource R>
Tour mutate_rsm(Tour t, R& rng) {
    const auto pts = draw_mutation_points(t.size(), rng);
    return mutate_rsm(std::move(t), pts);
}

/// Partial shuffle mutation. For every position i in order, one real draw p;
/// when p < pm a partner j is drawn from [0, n-1] (j == i allowed) and
/// t[i], t[j] are swapped. Always consumes exactly n real draws.
template <DrawSource R>
Tour mutate_psm(Tour t, double pm, R& rng) {
    detail::check_probability(pm, "mutate_psm");
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double p = rng.uniform_real();
        if (p < pm) {
            std::swap(t[i], t[rng.uniform_index(0, n - 1)]);
        }
    }
    return t;
}

/// Hybrid PSM/RSM mutation. Each step of the segment reversal swaps t[a], t[b],
/// then with probability pm also swaps the current head t[a] with a random
/// position j. Runs while a <= b, so an odd-length segment spends one step
/// (and one real draw) on its middle element.
///
/// With pm == 0 no draws are taken: the result equals `mutate_rsm` on the same
/// points and the stream stays aligned with an RSM run.
template <DrawSource R>
Tour mutate_hprm(Tour t, double pm, MutationPoints pts, R& rng) {
    detail::check_probability(pm, "mutate_hprm");
    detail::check_points(pts, t.size());
    const std::size_t n = t.size();
    std::size_t a = pts.a;
    std::size_t b = pts.b;
    while (a <= b) {
        std::swap(t[a], t[b]);
        if (pm > 0.0 && rng.uniform_real() < pm) {
            std::swap(t[a], t[rng.uniform_index(0, n - 1)]);
        }
        ++a;
        if (b == 0) {
            break;
        }
        --b;
    }
    return t;
}

template <DrawSource R>
Tour mutate_hprm(Tour t, double pm, R& rng) {
    const auto pts = draw_mutation_points(t.size(), rng);
    return mutate_hprm(std::move(t), pm, pts, rng);
}

/// Order crossover (OX1). The child keeps p1[c1..c2] in place; the remaining
/// positions, starting just after c2 and wrapping, take the cities of p2 in
/// p2's cyclic order from just after c2, skipping cities already copied.
inline Tour crossover_ox(std::span<const City> p1, std::span<const City> p2, CutPoints cuts) {
    const std::size_t n = p1.size();
    if (p2.size() != n) {
        throw ContractError("crossover_ox: parents differ in size");
    }
    if (cuts.c1 >= cuts.c2 || cuts.c2 >= n) {
        throw ContractError("crossover_ox: cut points (" + std::to_string(cuts.c1) + ", " +
                            std::to_string(cuts.c2) + ") invalid for size " + std::to_string(n));
    }
    Tour child(n);
    std::vector<bool> taken(n, false);
    for (std::size_t k = cuts.c1; k <= cuts.c2; ++k) {
        if (p1[k] >= n) {
            throw ContractError("crossover_ox: parent 1 is not a permutation");
        }
        child[k] = p1[k];
        taken[p1[k]] = true;
    }
    std::size_t out = (cuts.c2 + 1) % n;
    for (std::size_t s = 0; s < n; ++s) {
        const City c = p2[(cuts.c2 + 1 + s) % n];
        if (c >= n) {
            throw ContractError("crossover_ox: parent 2 is not a permutation");
        }
        if (taken[c]) {
            continue;
        }
        taken[c] = true;
        child[out] = c;
        out = (out + 1) % n;
    }
    if (out != cuts.c1) {
        throw ContractError("crossover_ox: parents are not permutations of the same cities");
    }
    return child;
}

template <DrawSource R>
Tour crossover_ox(std::span<const City> p1, std::span<const City> p2, R& rng) {
    const auto cuts = draw_cut_points(p1.size(), rng);
    return crossover_ox(p1, p2, cuts);
}

/// Fitness-proportionate selector over a fixed set of lengths. Building the
/// prefix sums is O(n); each spin is one real draw plus a binary search.
class RouletteWheel {
  public:
    explicit RouletteWheel(std::span<const TourLength> lengths) {
        if (lengths.empty()) {
            throw ContractError("RouletteWheel: empty pool");
        }
        cumulative_.reserve(lengths.size());
        double sum = 0.0;
        for (TourLength len : lengths) {
            sum += fitness_of(len);
            cumulative_.push_back(sum);
        }
    }

    std::size_t size() const noexcept { return cumulative_.size(); }
    double total() const noexcept { return cumulative_.back(); }

    double probability(std::size_t k) const {
        const double lo = k == 0 ? 0.0 : cumulative_[k - 1];
        return (cumulative_.at(k) - lo) / total();
    }

    template <DrawSource R>
    std::size_t spin(R& rng) const {
        const double target = rng.uniform_real() * total();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
        const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
        return std::min(idx, cumulative_.size() - 1);
    }

  private:
    std::vector<double> cumulative_;
};

/// One roulette draw over `pool`, which must be evaluated.
template <DrawSource R>
std::size_t select_roulette(const Population& pool, R& rng) {
    if (pool.members.empty()) {
        throw ContractError("select_roulette: empty pool");
    }
    if (!pool.evaluated()) {
        throw ContractError("select_roulette: pool lengths are not cached");
    }
    return RouletteWheel(pool.lengths).spin(rng);
}

/// Applies the configured mutation, drawing points where the operator needs them.
template <DrawSource R>
Tour mutate(Tour t, const GaConfig& cfg, R& rng) {
    switch (cfg.mutation_operator) {
    case MutationOperator::Rsm:
        return mutate_rsm(std::move(t), rng);
    case MutationOperator::Psm:
        return mutate_psm(std::move(t), cfg.mutation_rate, rng);
    case MutationOperator::Hprm:
        return mutate_hprm(std::move(t), cfg.mutation_rate, rng);
    }
    throw ContractError("mutate: unknown operator");
}

/// Produces P' from an evaluated population: population_size children, each
/// from two roulette-chosen parents, OX with probability crossover_rate
/// (otherwise a copy of the first parent), then the configured mutation.
///
/// Draw order per child: parent 1, parent 2, crossover coin, [cuts], mutation
/// draws. Parent 2 and the coin are drawn even when unused so the stream
/// layout does not depend on the coin outcome.
template <DrawSource R>
Population variation(const Population& pop, const GaConfig& cfg, R& rng) {
    if (!pop.evaluated()) {
        throw ContractError("variation: population is not evaluated");
    }
    const RouletteWheel wheel(pop.lengths);
    Population children;
    children.members.reserve(cfg.population_size);
    for (std::size_t k = 0; k < cfg.population_size; ++k) {
        const Tour& p1 = pop.members[wheel.spin(rng)];
        const Tour& p2 = pop.members[wheel.spin(rng)];
        Tour child = rng.uniform_real() < cfg.crossover_rate ? crossover_ox(p1, p2, rng) : p1;
        children.members.push_back(mutate(std::move(child), cfg, rng));
    }
    return children;
}

} // namespace tspga
