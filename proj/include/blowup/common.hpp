#pragma once

#include <stdexcept>
#include <string>

namespace blowup {

// Thrown for malformed inputs (files, CLI arguments, precondition
// violations the caller is responsible for). CLI maps this to exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a retry/node/tuple budget is exhausted. Exit code 3.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a guarantee that should hold by construction fails.
// Always a bug or a run outside the guaranteed regime. Exit code 4.
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace blowup
