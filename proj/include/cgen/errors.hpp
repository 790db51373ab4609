#pragma once

#include <stdexcept>
#include <string>

namespace cgen {

/// Raised when caller-supplied arguments violate a generator's precondition
/// (duplicate elements, D < 2, capacity mismatch, out-of-range bucket, ...).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised instead of wrapping around when a count or rank leaves 64 bits.
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

/// Raised when a write would exceed a preallocated bucket.
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

/// Raised when storage for a planned table cannot be obtained.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cgen
