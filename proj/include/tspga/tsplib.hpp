#pragma once

/// @file tsplib.hpp
/// @brief TSPLIB instance/tour readers, the EUC_2D distance matrix and tour length.
///
/// Cities are 0-based everywhere in the library; TSPLIB's 1-based indices are
/// converted on read and restored on write.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "errors.hpp"

namespace tspga {

using City = std::uint32_t;

/// A chromosome: the visiting order of cities 0..n-1. The closing edge back to
/// the first city is implicit.
using Tour = std::vector<City>;

using TourLength = std::int64_t;

enum class EdgeWeightKind {
    Euc2dRounded, // TSPLIB EUC_2D: nearest-integer Euclidean distance
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Instance {
    std::string name;
    std::size_t dimension = 0;
    std::vector<Point> coords;
    EdgeWeightKind edge_weight_kind = EdgeWeightKind::Euc2dRounded;
};

/// True iff `order` holds every value of 0..order.size()-1 exactly once.
inline bool is_permutation_of_range(std::span<const City> order) {
    std::vector<bool> seen(order.size(), false);
    for (City c : order) {
        if (c >= order.size() || seen[c]) {
            return false;
        }
        seen[c] = true;
    }
    return true;
}

inline void require_permutation(std::span<const City> order, std::size_t n, const char* who) {
    if (order.size() != n) {
        throw ContractError(std::string(who) + ": tour has " + std::to_string(order.size()) +
                            " cities, expected " + std::to_string(n));
    }
    if (!is_permutation_of_range(order)) {
        throw ContractError(std::string(who) + ": tour is not a permutation of 0.." +
                            std::to_string(n == 0 ? 0 : n - 1));
    }
}

/// Dense symmetric n x n integer distance table.
class DistanceMatrix {
  public:
    DistanceMatrix() = default;

    std::size_t size() const noexcept { return n_; }

    TourLength operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }

    std::span<const TourLength> row(std::size_t i) const noexcept {
        return {d_.data() + i * n_, n_};
    }

    friend DistanceMatrix build_distance_matrix(const Instance& inst);

  private:
    std::size_t n_ = 0;
    std::vector<TourLength> d_;
};

/// TSPLIB nint(): round half up. Arguments are non-negative distances.
inline TourLength nearest_integer(double v) {
    return static_cast<TourLength>(std::floor(v + 0.5));
}

inline void validate_instance(const Instance& inst) {
    if (inst.dimension < 2) {
        throw ContractError("instance dimension must be at least 2");
    }
    if (inst.coords.size() != inst.dimension) {
        throw ContractError("instance has " + std::to_string(inst.coords.size()) +
                            " coordinates for dimension " + std::to_string(inst.dimension));
    }
}

inline DistanceMatrix build_distance_matrix(const Instance& inst) {
    validate_instance(inst);
    DistanceMatrix dm;
    const std::size_t n = inst.dimension;
    dm.n_ = n;
    dm.d_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = inst.coords[i].x - inst.coords[j].x;
            const double dy = inst.coords[i].y - inst.coords[j].y;
            const TourLength d = nearest_integer(std::sqrt(dx * dx + dy * dy));
            dm.d_[i * n + j] = d;
            dm.d_[j * n + i] = d;
        }
    }
    return dm;
}

/// Closed-cycle length: consecutive edges plus the edge back to the start.
/// Skips the permutation check; callers in hot loops guarantee it.
inline TourLength tour_length_unchecked(const DistanceMatrix& dm, std::span<const City> t) {
    TourLength total = 0;
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        total += dm(t[k], t[k + 1]);
    }
    return total + dm(t.back(), t.front());
}

inline TourLength tour_length(const DistanceMatrix& dm, std::span<const City> t) {
    require_permutation(t, dm.size(), "tour_length");
    return tour_length_unchecked(dm, t);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n\f\v";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        if (i > start) {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

template <class T>
std::optional<T> parse_number(std::string_view tok) {
    if (!tok.empty() && tok.front() == '+') {
        tok.remove_prefix(1);
    }
    T value{};
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        return std::nullopt;
    }
    return value;
}

struct KeyValue {
    std::string_view key;
    std::string_view value;
};

/// Splits "KEY : VALUE" (whitespace around ':' optional). A bare keyword such
/// as NODE_COORD_SECTION yields an empty value.
inline std::optional<KeyValue> split_header(std::string_view line) {
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
        const auto t = trim(line);
        if (t.empty() || t.find_first_of(" \t") != std::string_view::npos) {
            return std::nullopt;
        }
        return KeyValue{t, {}};
    }
    return KeyValue{trim(line.substr(0, colon)), trim(line.substr(colon + 1))};
}

inline std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Line-oriented cursor that remembers 1-based line numbers.
class LineReader {
  public:
    explicit LineReader(std::string_view text) : text_(text) {}

    bool next(std::string_view& line) {
        if (pos_ >= text_.size()) {
            return false;
        }
        const auto nl = text_.find('\n', pos_);
        const auto end = nl == std::string_view::npos ? text_.size() : nl;
        line = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        ++line_no_;
        return true;
    }

    std::size_t line_no() const noexcept { return line_no_; }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
};

} // namespace detail

/// Reads a TSPLIB `.tsp` file with EDGE_WEIGHT_TYPE EUC_2D.
///
/// Recognised header keywords are NAME, TYPE, COMMENT, DIMENSION and
/// EDGE_WEIGHT_TYPE; other `KEY : VALUE` lines are ignored. The coordinate
/// section ends at `EOF` or end of input. Every error carries the offending
/// line number.
inline Instance parse_instance(std::string_view text) {
    using namespace detail;
    Instance inst;
    std::optional<std::size_t> dimension;
    bool have_edge_type = false;
    bool in_coords = false;
    std::vector<std::optional<Point>> slots;
    std::size_t coord_lines = 0;

    LineReader reader(text);
    std::string_view raw;
    while (reader.next(raw)) {
        const std::size_t ln = reader.line_no();
        const auto line = trim(raw);
        if (line.empty()) {
            continue;
        }
        if (line == "EOF") {
            break;
        }
        if (in_coords) {
            const auto tok = split_ws(line);
            if (tok.size() != 3) {
                throw ParseError(ln, "expected 'index x y', got '" + std::string(line) + "'");
            }
            const auto idx = parse_number<long long>(tok[0]);
            const auto x = parse_number<double>(tok[1]);
            const auto y = parse_number<double>(tok[2]);
            if (!idx) {
                throw ParseError(ln, "non-integer city index '" + std::string(tok[0]) + "'");
            }
            if (!x || !y || !std::isfinite(*x) || !std::isfinite(*y)) {
                throw ParseError(ln, "non-numeric coordinate in '" + std::string(line) + "'");
            }
            ++coord_lines;
            if (*idx < 1 || static_cast<std::size_t>(*idx) > *dimension) {
                throw ParseError(ln, "city index " + std::to_string(*idx) + " outside 1.." +
                                         std::to_string(*dimension));
            }
            auto& slot = slots[static_cast<std::size_t>(*idx - 1)];
            if (slot) {
                throw ParseError(ln, "duplicate city index " + std::to_string(*idx));
            }
            slot = Point{*x, *y};
            continue;
        }

        const auto kv = split_header(line);
        if (!kv) {
            throw ParseError(ln, "malformed header line '" + std::string(line) + "'");
        }
        if (kv->key == "NAME") {
            inst.name = std::string(kv->value);
        } else if (kv->key == "TYPE") {
            if (kv->value != "TSP") {
                throw ParseError(ln, "unsupported TYPE '" + std::string(kv->value) + "'");
            }
        } else if (kv->key == "DIMENSION") {
            const auto d = parse_number<long long>(kv->value);
            if (!d || *d < 2) {
                throw ParseError(ln, "DIMENSION must be an integer >= 2, got '" +
                                         std::string(kv->value) + "'");
            }
            dimension = static_cast<std::size_t>(*d);
        } else if (kv->key == "EDGE_WEIGHT_TYPE") {
            if (kv->value != "EUC_2D") {
                throw ParseError(ln, "unsupported EDGE_WEIGHT_TYPE '" + std::string(kv->value) +
                                         "' (only EUC_2D)");
            }
            have_edge_type = true;
        } else if (kv->key == "NODE_COORD_SECTION") {
            if (!dimension) {
                throw ParseError(ln, "NODE_COORD_SECTION before DIMENSION");
            }
            if (!have_edge_type) {
                throw ParseError(ln, "NODE_COORD_SECTION before EDGE_WEIGHT_TYPE");
            }
            slots.assign(*dimension, std::nullopt);
            in_coords = true;
        } else if (kv->value.empty()) {
            throw ParseError(ln, "unsupported section '" + std::string(kv->key) + "'");
        }
    }

    if (!in_coords) {
        throw ParseError(0, "missing NODE_COORD_SECTION");
    }
    if (coord_lines != *dimension) {
        throw ParseError(reader.line_no(), "DIMENSION is " + std::to_string(*dimension) +
                                               " but " + std::to_string(coord_lines) +
                                               " coordinate lines were read");
    }
    inst.dimension = *dimension;
    inst.coords.reserve(*dimension);
    for (const auto& s : slots) {
        inst.coords.push_back(*s);
    }
    return inst;
}

inline Instance load_instance(const std::filesystem::path& path) {
    const std::string text = detail::read_all(path);
    try {
        return parse_instance(text);
    } catch (const ParseError& e) {
        throw ParseError(path.string(), e.line(), e.message());
    }
}

/// Raw contents of a TSPLIB `.tour` file before permutation checks.
struct TourFile {
    std::string name;
    std::optional<std::size_t> dimension;
    std::vector<long long> ids;        // 1-based as written
    std::vector<std::size_t> id_lines; // source line of each id
};

inline TourFile read_tour_file(std::string_view text) {
    using namespace detail;
    TourFile tf;
    bool in_section = false;
    bool terminated = false;
    LineReader reader(text);
    std::string_view raw;
    while (!terminated && reader.next(raw)) {
        const std::size_t ln = reader.line_no();
        const auto line = trim(raw);
        if (line.empty()) {
            continue;
        }
        if (line == "EOF") {
            break;
        }
        if (in_section) {
            for (auto tok : split_ws(line)) {
                const auto v = parse_number<long long>(tok);
                if (!v) {
                    throw ParseError(ln, "non-integer city id '" + std::string(tok) + "'");
                }
                if (*v == -1) {
                    terminated = true;
                    break;
                }
                tf.ids.push_back(*v);
                tf.id_lines.push_back(ln);
            }
            continue;
        }
        const auto kv = split_header(line);
        if (!kv) {
            throw ParseError(ln, "malformed header line '" + std::string(line) + "'");
        }
        if (kv->key == "NAME") {
            tf.name = std::string(kv->value);
        } else if (kv->key == "TYPE") {
            if (kv->value != "TOUR") {
                throw ParseError(ln, "unsupported TYPE '" + std::string(kv->value) + "'");
            }
        } else if (kv->key == "DIMENSION") {
            const auto d = parse_number<long long>(kv->value);
            if (!d || *d < 1) {
                throw ParseError(ln, "DIMENSION must be a positive integer");
            }
            tf.dimension = static_cast<std::size_t>(*d);
        } else if (kv->key == "TOUR_SECTION") {
            in_section = true;
        } else if (kv->value.empty()) {
            throw ParseError(ln, "unsupported section '" + std::string(kv->key) + "'");
        }
    }
    if (!in_section) {
        throw ParseError(0, "missing TOUR_SECTION");
    }
    return tf;
}

struct TourProblem {
    std::size_t line = 0;
    std::string message;
};

/// First permutation violation of `tf` against cities 1..n, if any.
inline std::optional<TourProblem> tour_problem(const TourFile& tf, std::size_t n) {
    std::vector<bool> seen(n, false);
    for (std::size_t k = 0; k < tf.ids.size(); ++k) {
        const long long id = tf.ids[k];
        if (id < 1 || static_cast<unsigned long long>(id) > n) {
            return TourProblem{tf.id_lines[k],
                               "city id " + std::to_string(id) + " outside 1.." + std::to_string(n)};
        }
        if (seen[static_cast<std::size_t>(id - 1)]) {
            return TourProblem{tf.id_lines[k], "duplicate city id " + std::to_string(id)};
        }
        seen[static_cast<std::size_t>(id - 1)] = true;
    }
    if (tf.ids.size() != n) {
        return TourProblem{0, "tour lists " + std::to_string(tf.ids.size()) + " cities, expected " +
                                  std::to_string(n)};
    }
    return std::nullopt;
}

/// Converts a raw tour to 0-based form, enforcing the permutation invariant
/// over 1..n where n is DIMENSION when present, else the number of ids.
inline Tour tour_from_file(const TourFile& tf) {
    const std::size_t n = tf.dimension.value_or(tf.ids.size());
    if (const auto problem = tour_problem(tf, n)) {
        throw ParseError(problem->line, problem->message);
    }
    Tour t;
    t.reserve(n);
    for (long long id : tf.ids) {
        t.push_back(static_cast<City>(id - 1));
    }
    return t;
}

inline TourFile load_tour_file(const std::filesystem::path& path) {
    const std::string text = detail::read_all(path);
    try {
        return read_tour_file(text);
    } catch (const ParseError& e) {
        throw ParseError(path.string(), e.line(), e.message());
    }
}

inline Tour parse_tour(std::string_view text) { return tour_from_file(read_tour_file(text)); }

inline Tour load_tour(const std::filesystem::path& path) {
    const TourFile tf = load_tour_file(path);
    try {
        return tour_from_file(tf);
    } catch (const ParseError& e) {
        throw ParseError(path.string(), e.line(), e.message());
    }
}

/// Writes `t` as a TSPLIB `.tour` document (1-based ids, -1 terminator).
inline std::string render_tour(std::span<const City> t, std::string_view name = "tour") {
    std::string out;
    out += "NAME : ";
    out += name;
    out += "\nTYPE : TOUR\nDIMENSION : ";
    out += std::to_string(t.size());
    out += "\nTOUR_SECTION\n";
    for (City c : t) {
        out += std::to_string(static_cast<unsigned long long>(c) + 1);
        out += '\n';
    }
    out += "-1\nEOF\n";
    return out;
}

} // namespace tspga
