#pragma once

#include <stdexcept>
#include <string>

namespace micromacro {

// Malformed input: bad permutation, bad reversion, unmet precondition.
// CLI exit code 1.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// An exact identity that should hold for every system failed.
// CLI exit code 2.
struct IdentityError : std::runtime_error {
    explicit IdentityError(const std::string& msg) : std::runtime_error(msg) {}
};

// An enumeration would exceed the configured budget. CLI exit code 3.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace micromacro
