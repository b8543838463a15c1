#pragma once

#include <stdexcept>
#include <string>

namespace qsvm {

/// Invalid argument passed to an operation (index out of range, size mismatch, non-finite value).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid or inconsistent configuration (qubit count, PCA dimension, gamma, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. The message carries the line number when one applies.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure that failed to converge or hit a degenerate input.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qsvm
