#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cgen/binomial.hpp"
#include "cgen/family.hpp"
#include "cgen/ground_set.hpp"

namespace cgen {

/// Element slot: a ground-set position, an atom id or a rank.
using Index = std::uint32_t;

/// Per-size matrix storage in one contiguous region.
///
/// Bucket k is `rows(k)` rows of width k laid out row-major at `offset(k)`.
/// Row counts are fixed at construction; the table never reallocates. Bucket
/// 0 reserves one placeholder slot per row so every row has its own address.
class BlockedTable {
 public:
  BlockedTable() = default;
  explicit BlockedTable(std::vector<Count> rows_per_bucket);

  /// Largest configuration size K (the table has K+1 buckets).
  std::size_t capacity() const { return rows_.empty() ? 0 : rows_.size() - 1; }
  std::size_t bucket_count() const { return rows_.size(); }
  Count rows(std::size_t k) const { return rows_[k]; }
  static std::size_t width(std::size_t k) { return k; }
  static std::size_t stride(std::size_t k) { return k == 0 ? 1 : k; }
  std::size_t offset(std::size_t k) const { return offsets_[k]; }
  std::size_t slot_count() const { return slots_.size(); }
  std::uint64_t id() const { return id_; }

  std::span<Index> row(std::size_t k, Count i) {
    return {slots_.data() + offsets_[k] + i * stride(k), width(k)};
  }
  std::span<const Index> row(std::size_t k, Count i) const {
    return {slots_.data() + offsets_[k] + i * stride(k), width(k)};
  }
  /// Row-major elements of bucket k (empty for k = 0).
  std::span<const Index> elements(std::size_t k) const {
    return {slots_.data() + offsets_[k], k == 0 ? 0 : rows_[k] * k};
  }

  /// Appends after the rows counted as filled so far.
  void push_back_row(std::size_t k, std::span<const Index> values);

  Count filled(std::size_t k) const { return filled_[k]; }
  /// Records `n` rows written directly through row(); not thread-safe.
  void add_filled(std::size_t k, Count n);
  /// Every bucket filled to exactly its row count.
  bool exactly_full() const;
  /// Counts a write that does not fit and throws CapacityError.
  [[noreturn]] void reject_overflow(const std::string& what);
  /// Writes that would have needed more room than planned.
  std::uint64_t growth_events() const { return growth_events_; }

  SizedFamily<Index> to_family() const;
  SizedFamily<Label> to_family(std::span<const Label> labels) const;

  /// Same shape and same row contents.
  bool same_contents(const BlockedTable& other) const;

 private:
  std::vector<Count> rows_;
  std::vector<std::size_t> offsets_;
  std::vector<Index> slots_;
  std::vector<Count> filled_;
  std::uint64_t growth_events_ = 0;
  std::uint64_t id_ = 0;
};

}  // namespace cgen
