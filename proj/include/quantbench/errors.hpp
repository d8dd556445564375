#pragma once

#include <stdexcept>
#include <string>

namespace quantbench {

// Malformed input or a violated precondition at the API boundary.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// The loaded dataset is missing pieces a command needs.
class DatasetError : public std::runtime_error {
public:
    explicit DatasetError(const std::string& what) : std::runtime_error(what) {}
};

// Numerically degenerate request: zero volatility, zero drawdown denominator,
// rank-deficient factor panel, constant sample, and the like.
class DegeneracyError : public std::runtime_error {
public:
    explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace quantbench
