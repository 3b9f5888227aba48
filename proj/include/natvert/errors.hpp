#pragma once

#include <stdexcept>
#include <string>

namespace natvert {

// Error taxonomy: configuration errors are caller mistakes (bad k, bad n),
// domain errors are mathematically invalid requests (inverse of zero,
// quotient by a non-subspace), budget errors carry the size that overflowed,
// parse errors come from malformed text input.

struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct budget_error : std::runtime_error {
    budget_error(const std::string& msg, unsigned long long actual)
        : std::runtime_error(msg + " (actual " + std::to_string(actual) + ")"),
          actual_size(actual) {}
    unsigned long long actual_size;
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace natvert
