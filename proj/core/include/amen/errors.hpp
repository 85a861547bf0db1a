#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amen {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input line; carries the 1-based line number.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
    std::size_t line_number;
};

/// Semantically invalid input (unknown node, out-of-range value, bad flag combination).
struct InputError : Error {
    using Error::Error;
};

/// Neighborhood too small to score (|C| < 2, or a degree-0 ego).
struct DegenerateNeighborhoodError : Error {
    using Error::Error;
};

/// The configuration null model k_i*k_j/2m is undefined (m == 0).
struct NullModelError : Error {
    using Error::Error;
};

/// A measure is undefined for the given neighborhood (zero denominator).
struct MeasureDomainError : Error {
    using Error::Error;
};

} // namespace amen
