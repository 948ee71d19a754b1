#pragma once

#include <stdexcept>
#include <string>

namespace markbracket {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix shape violation: non-square nullity, out-of-range row/column.
struct DimensionError : Error {
    using Error::Error;
};

// Unknown vertex handle.
struct LookupError : Error {
    using Error::Error;
};

// Operation applied to data that does not satisfy its requirements.
struct PreconditionError : Error {
    using Error::Error;
};

// A move whose configuration is not present in the graph.
struct MoveNotApplicableError : PreconditionError {
    using PreconditionError::PreconditionError;
};

// Input exceeds a hard size bound.
struct CapacityError : Error {
    using Error::Error;
};

// exact_divide left a nonzero remainder.
struct DivisibilityError : Error {
    using Error::Error;
};

// Text input rejected; positions are 1-based.
struct ParseError : Error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& msg)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
          line(line_),
          column(column_) {}
};

} // namespace markbracket
