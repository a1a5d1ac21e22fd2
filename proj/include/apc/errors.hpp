#pragma once

#include <stdexcept>
#include <string>

namespace apc {

/// Malformed or out-of-domain input (bad letter, invalid machine, ...).
/// CLI maps this to exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A computation was refused or cut short because it would exceed a
/// configured resource budget. CLI maps this to exit code 3.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace apc
