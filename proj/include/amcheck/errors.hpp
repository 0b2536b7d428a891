#pragma once

#include <stdexcept>
#include <string>

namespace amc {

// Exceeding a configured cap (group order, subgroup count, row-count guard).
struct CapError : std::runtime_error {
  explicit CapError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed user input: group files, spec strings, certificates.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A broken internal invariant; always a bug, never a user error.
struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace amc
