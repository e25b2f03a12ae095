#pragma once

/// @file errors.hpp
/// @brief Exception types shared by the library.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace tspga {

/// Raised when a caller violates an operation's precondition
/// (non-permutation tour, probability outside [0,1], bad mutation points...).
class ContractError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by the TSPLIB readers. `line()` is 1-based; 0 means "end of input".
/// `source()` names the file when the reader was given a path.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& message)
        : ParseError(std::string{}, line, message) {}

    ParseError(std::string source, std::size_t line, const std::string& message)
        : std::runtime_error(format(source, line, message)), source_(std::move(source)),
          line_(line), message_(message) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

  private:
    static std::string format(const std::string& source, std::size_t line,
                              const std::string& message) {
        std::string out = source.empty() ? "line " : source + ":";
        out += line == 0 ? std::string("end of input") : std::to_string(line);
        return out + ": " + message;
    }

    std::string source_;
    std::size_t line_;
    std::string message_;
};

} // namespace tspga
