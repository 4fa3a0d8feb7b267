#pragma once

#include <stdexcept>
#include <string>

namespace mbred {

// Invalid input: a type invariant or operation precondition is violated.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Failure inside an otherwise valid computation (e.g. eigensolver did not converge).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mbred
