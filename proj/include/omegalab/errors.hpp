#pragma once
// Exception types shared by every omegalab module.

#include <stdexcept>
#include <string>

namespace omegalab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bit stream ended in the middle of a codeword.
struct TruncatedStream : Error {
    using Error::Error;
};

/// Request exceeds a configured cap (block count, oracle scale, integer width).
struct ResourceLimit : Error {
    using Error::Error;
};

/// Malformed container file or text input.
struct FormatError : Error {
    using Error::Error;
};

/// Function evaluated outside its domain.
struct DomainError : Error {
    using Error::Error;
};

struct QuadratureFailure : Error {
    using Error::Error;
};

/// Density vanishes inside a segment where an implied length is requested.
struct ZeroMassRegion : Error {
    using Error::Error;
};

/// Implied length would be negative (density above one).
struct NegativeLength : Error {
    using Error::Error;
};

struct EmptyCell : Error {
    using Error::Error;
};

/// Full decomposition requested but the quantization does not cover the law.
struct CoverageError : Error {
    using Error::Error;
};

/// Law or quantization violates an invariant; `path` names the offending field.
struct InvalidInput : Error {
    InvalidInput(std::string path, const std::string& what)
        : Error(path + ": " + what), path(std::move(path)) {}
    std::string path;
};

}  // namespace omegalab
