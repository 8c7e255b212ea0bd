#pragma once

#include <stdexcept>
#include <string>

namespace laprox {

// Malformed input text; line is 1-based, 0 when no line applies.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Semantically invalid input data (e.g. graph too small, unknown node id).
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller misuse: bad parameter values, invalid flag combinations.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numeric or internal-consistency failure (factorization, residual, cross-check).
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Refusal of a request that exceeds a configured resource cap.
class cap_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace laprox
