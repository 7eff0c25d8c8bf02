#pragma once

#include <stdexcept>
#include <string>

namespace predprey {

/// Invalid configuration or violated precondition (CLI exit code 2).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: non-convergence, singular matrix, lost positivity (CLI exit code 3).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace predprey
