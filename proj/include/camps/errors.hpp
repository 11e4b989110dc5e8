#pragma once

#include <stdexcept>
#include <string>

namespace camps {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid argument values: bad site/bond indices, malformed coefficients,
// unsupported chain lengths, non-Hermitian term input, and the like.
struct ArgumentError : Error {
    using Error::Error;
};

// Operand size/shape mismatches (site counts, tensor dimensions).
struct SizeError : Error {
    using Error::Error;
};

// Iterative eigensolver failed to reach the requested residual.
struct SolverError : Error {
    SolverError(const std::string& msg, double best_residual_)
        : Error(msg), best_residual(best_residual_) {}
    double best_residual;
};

// Least-squares fit rejected its input (too few points, degenerate design
// matrix, out-of-domain data).
struct FitError : Error {
    using Error::Error;
};

// A set of tableau images that is not a valid Clifford (symplectic) map.
struct InvalidTableauError : Error {
    using Error::Error;
};

// Text/binary format violations. `line` is 1-based, 0 when not applicable.
struct FormatError : Error {
    FormatError(const std::string& msg, long line_ = 0)
        : Error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
          line(line_) {}
    long line;
};

// Structurally degenerate numeric input (all-zero tensor, empty spectrum).
struct DegenerateInputError : Error {
    using Error::Error;
};

}  // namespace camps
