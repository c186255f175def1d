#ifndef QAOA_ERRORS_HPP
#define QAOA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qaoa {

// Base for runtime failures (I/O, limits, generation). Precondition and
// argument violations throw std::invalid_argument instead.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file; carries the 1-based line number when known.
struct ParseError : Error {
    ParseError(const std::string& msg, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_number(line) {}
    int line_number;
};

// Instance exceeds a documented size cap (brute force, simulator width).
struct SizeLimitError : Error {
    using Error::Error;
};

// Randomized construction exhausted its retry budget.
struct GenerationError : Error {
    using Error::Error;
};

} // namespace qaoa

#endif
