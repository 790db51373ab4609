#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cgen/errors.hpp"

namespace cgen {

using Label = std::int64_t;

/// Throws PreconditionError if `xs` holds a repeated value (sorted probe).
template <class T>
void require_distinct(std::span<const T> xs) {
  std::vector<T> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw PreconditionError("ground set contains duplicate elements");
  }
}

/// The user's element values in input order. Generators work on positions
/// 0..N-1; the labels translate positions back to values.
class GroundSet {
 public:
  explicit GroundSet(std::vector<Label> labels);

  /// Labels 1..n.
  static GroundSet iota(std::size_t n);
  /// Parses "1,2,3".
  static GroundSet parse(const std::string& csv);

  std::size_t size() const { return labels_.size(); }
  std::span<const Label> labels() const { return labels_; }
  Label operator[](std::size_t i) const { return labels_[i]; }

 private:
  std::vector<Label> labels_;
};

}  // namespace cgen
