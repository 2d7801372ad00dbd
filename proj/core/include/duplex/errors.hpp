#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace duplex {

// Base class for errors caused by bad input data. The CLI maps these to
// exit code 2; genuine usage errors (bad flags) map to exit code 1.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public DataError {
public:
    using DataError::DataError;
};

// A word's frame span cannot hold its opener plus text tokens.
class SpanCapacityError : public DataError {
public:
    using DataError::DataError;
};

// A non-SIL text slot would shift below frame 0 under lookahead.
class LookaheadUnderflowError : public DataError {
public:
    using DataError::DataError;
};

class IllegalTransitionError : public DataError {
public:
    using DataError::DataError;
};

// JSON / JSONL parse failure. line() is 1-based, 0 when not line-oriented.
class ParseError : public DataError {
public:
    ParseError(const std::string& what, int64_t line = 0)
        : DataError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int64_t line() const { return line_; }

private:
    int64_t line_ = 0;
};

} // namespace duplex
