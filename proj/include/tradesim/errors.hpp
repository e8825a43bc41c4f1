#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tradesim {

// Numeric failures. Callers that can recover catch the specific type;
// the CLI maps all of these to exit code 3.
struct NotPositiveDefinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooFewSamples : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveVariance : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidEpsilon : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooFewPoints : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AttemptsExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroVariance : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooFewReturns : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooFewTicks : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooFewElements : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoAnswers : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File ingestion failures carry the 1-based line number of the offending row.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    std::size_t line;
};

struct NonPositivePrice : ParseError {
    using ParseError::ParseError;
};

struct NonMonotoneIndex : ParseError {
    using ParseError::ParseError;
};

}  // namespace tradesim
