#pragma once
// Error taxonomy. Exit-code mapping in the CLI follows these categories:
// parse errors (data or query), store errors, config errors.

#include <stdexcept>
#include <string>

namespace pathtriple {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data or query text. Carries a 1-based line (0 = unknown).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, uint64_t line = 0, uint64_t column = 0)
        : Error(format(msg, line, column)), line_(line), column_(column) {}

    uint64_t line() const { return line_; }
    uint64_t column() const { return column_; }

private:
    static std::string format(const std::string& msg, uint64_t line, uint64_t column) {
        if (line == 0) return msg;
        std::string s = "line " + std::to_string(line);
        if (column != 0) s += ":" + std::to_string(column);
        return s + ": " + msg;
    }

    uint64_t line_;
    uint64_t column_;
};

// Store lifecycle violations, I/O failures, integrity mismatches.
class StoreError : public Error {
public:
    using Error::Error;
};

// Bad partition config / cost-model parameters.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Operation invoked in the wrong lifecycle phase (e.g. write after seal).
class StateError : public Error {
public:
    using Error::Error;
};

}  // namespace pathtriple
