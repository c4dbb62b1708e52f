#pragma once
// Error types shared across the library. The CLI maps ValidationError to
// exit code 2 and ComputeError to exit code 3.

#include <stdexcept>
#include <string>

namespace concord {

// Bad input: malformed values, mismatched dimensions, unknown identifiers.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: non-convergent iteration, exhausted generation budget.
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace concord
