#pragma once

/// @file rng.hpp
/// @brief Deterministic random draw sources.
///
/// Every random choice in the library goes through a type satisfying
/// `DrawSource`: `uniform_index(lo, hi)` (inclusive on both ends) and
/// `uniform_real()` in [0, 1). `RngStream` is the production source;
/// `ScriptedDraws` replays fixed values so operator traces can be asserted
/// exactly.
///
/// The integer and real mappings are implemented here rather than through
/// `<random>` distributions, whose output is implementation-defined. Only the
/// engine (`std::mt19937_64`, fully specified by the standard) is reused, so a
/// seed reproduces the same draws on every conforming toolchain.

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace tspga {

template <class R>
concept DrawSource = requires(R& r, std::size_t lo, std::size_t hi) {
    { r.uniform_index(lo, hi) } -> std::convertible_to<std::size_t>;
    { r.uniform_real() } -> std::convertible_to<double>;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Purpose tags keep the initial-population and evolution streams of one run
/// disjoint even though both derive from (root seed, run index).
enum class StreamPurpose : std::uint64_t {
    InitialPopulation = 0x1f2e3d4c5b6a7988ULL,
    Evolution = 0x8897a6b5c4d3e2f1ULL,
};

/// Seed for run `run` of an experiment rooted at `root`. Streams depend only on
/// (root, run, purpose), never on scheduling order. The root is hashed before
/// the run index is mixed in, so distinct roots never share run streams.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t run,
                                    StreamPurpose purpose) noexcept {
    return mix64(mix64(root ^ static_cast<std::uint64_t>(purpose)) + run);
}

class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [lo, hi] via rejection sampling (no modulo bias).
    std::size_t uniform_index(std::size_t lo, std::size_t hi) {
        if (lo > hi) {
            throw ContractError("uniform_index: empty range");
        }
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo);
        if (span == std::numeric_limits<std::uint64_t>::max()) {
            return static_cast<std::size_t>(engine_());
        }
        const std::uint64_t range = span + 1;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    (std::numeric_limits<std::uint64_t>::max() % range + 1) % range;
        std::uint64_t x = engine_();
        while (x > limit) {
            x = engine_();
        }
        return lo + static_cast<std::size_t>(x % range);
    }

    /// Uniform real in [0, 1) with 53 bits of precision.
    double uniform_real() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

  private:
    std::mt19937_64 engine_;
};

/// Replays a fixed script of integer and real draws. The two queues are
/// consumed independently; running out of either throws `std::out_of_range`,
/// and a scripted integer outside the requested range throws `ContractError`.
class ScriptedDraws {
  public:
    ScriptedDraws(std::vector<std::size_t> indices, std::vector<double> reals)
        : indices_(std::move(indices)), reals_(std::move(reals)) {}

    std::size_t uniform_index(std::size_t lo, std::size_t hi) {
        if (next_index_ >= indices_.size()) {
            throw std::out_of_range("ScriptedDraws: integer script exhausted");
        }
        const std::size_t v = indices_[next_index_++];
        if (v < lo || v > hi) {
            throw ContractError("ScriptedDraws: scripted value " + std::to_string(v) +
                                " outside [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
        }
        return v;
    }

    double uniform_real() {
        if (next_real_ >= reals_.size()) {
            throw std::out_of_range("ScriptedDraws: real script exhausted");
        }
        return reals_[next_real_++];
    }

    std::size_t indices_consumed() const noexcept { return next_index_; }
    std::size_t reals_consumed() const noexcept { return next_real_; }

  private:
    std::vector<std::size_t> indices_;
    std::vector<double> reals_;
    std::size_t next_index_ = 0;
    std::size_t next_real_ = 0;
};

static_assert(DrawSource<RngStream>);
static_assert(DrawSource<ScriptedDraws>);

} // namespace tspga
