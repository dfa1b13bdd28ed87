#pragma once

#include <stdexcept>
#include <string>

namespace netemd {

// Malformed input data: edge lists, TSV/JSON files, bad tokens.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Valid-looking input that violates an operation's preconditions
// (empty edge set, rank-deficient matrix, mismatched orbit sets, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested configuration is outside the supported envelope
// (e.g. directed graphlets of size 5).
struct CapabilityError : std::runtime_error {
  explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Generator parameter search failed to reach the target average degree.
struct CalibrationError : std::runtime_error {
  explicit CalibrationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid command invocation: unknown flag values, impossible compositions.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace netemd
