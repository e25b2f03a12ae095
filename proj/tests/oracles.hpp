#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the operator implementations it is compared against.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <vector>

#include <tspga/tsplib.hpp>

namespace tspga::oracle {

/// Segment reversal via std::reverse.
inline Tour reverse_segment(Tour t, std::size_t a, std::size_t b) {
    std::reverse(t.begin() + static_cast<std::ptrdiff_t>(a),
                 t.begin() + static_cast<std::ptrdiff_t>(b) + 1);
    return t;
}

/// OX1 by explicit list building: p2 rotated to start after c2, minus the
/// kept segment, poured into the free slots c2+1..n-1 then 0..c1-1.
inline Tour order_crossover(const Tour& p1, const Tour& p2, std::size_t c1, std::size_t c2) {
    const std::size_t n = p1.size();
    const std::vector<City> kept(p1.begin() + static_cast<std::ptrdiff_t>(c1),
                                 p1.begin() + static_cast<std::ptrdiff_t>(c2) + 1);
    std::vector<City> donor;
    for (std::size_t s = 0; s < n; ++s) {
        const City c = p2[(c2 + 1 + s) % n];
        if (std::find(kept.begin(), kept.end(), c) == kept.end()) {
            donor.push_back(c);
        }
    }
    std::vector<std::size_t> free_slots;
    for (std::size_t k = c2 + 1; k < n; ++k) {
        free_slots.push_back(k);
    }
    for (std::size_t k = 0; k < c1; ++k) {
        free_slots.push_back(k);
    }
    Tour child = p1;
    for (std::size_t i = 0; i < free_slots.size(); ++i) {
        child[free_slots[i]] = donor[i];
    }
    return child;
}

/// Length change of reversing [a, b] computed from the two boundary edges only.
inline TourLength reversal_delta(const DistanceMatrix& dm, const Tour& t, std::size_t a,
                                 std::size_t b) {
    const std::size_t n = t.size();
    if (a >= b || b - a + 1 >= n) {
        return 0;
    }
    const City prev = t[(a + n - 1) % n];
    const City next = t[(b + 1) % n];
    return dm(prev, t[b]) + dm(t[a], next) - dm(prev, t[a]) - dm(t[b], next);
}

/// Pearson chi-square statistic of observed counts against a uniform expectation.
inline double chi_square_uniform(const std::vector<std::size_t>& counts) {
    std::size_t total = 0;
    for (auto c : counts) {
        total += c;
    }
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double chi2 = 0.0;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        chi2 += d * d / expected;
    }
    return chi2;
}

/// Upper 0.1% critical value of chi-square with 23 degrees of freedom.
inline constexpr double kChiSquare23At001 = 49.728;

inline double binomial_sigma(double p, std::size_t n) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

inline bool is_permutation(const Tour& t, std::size_t n) {
    if (t.size() != n) {
        return false;
    }
    std::vector<City> sorted = t;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) {
        if (sorted[i] != i) {
            return false;
        }
    }
    return true;
}

/// Runs `cmd` through the shell, capturing stdout; returns the exit status.
inline int run_command(const std::string& cmd, std::string& out) {
    out.clear();
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) {
        return -1;
    }
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, got);
    }
    const int status = ::pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace tspga::oracle
