#include "cgen/blocked_table.hpp"

#include <algorithm>
#include <atomic>
#include <new>
#include <string>

#include "cgen/errors.hpp"

namespace cgen {

namespace {
std::atomic<std::uint64_t> next_table_id{1};

// Refuse plans that could not be materialized on any ordinary machine.
constexpr std::size_t kMaxSlots = std::size_t{1} << 36;
}  // namespace

BlockedTable::BlockedTable(std::vector<Count> rows_per_bucket)
    : rows_(std::move(rows_per_bucket)),
      offsets_(rows_.size(), 0),
      filled_(rows_.size(), 0),
      id_(next_table_id.fetch_add(1, std::memory_order_relaxed)) {
  Count total = 0;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    offsets_[k] = static_cast<std::size_t>(total);
    total = checked_add(total, checked_mul(rows_[k], stride(k)));
  }
  if (total > kMaxSlots) {
    throw ResourceError("planned table needs " + std::to_string(total) + " slots");
  }
  try {
    slots_.assign(static_cast<std::size_t>(total), 0);
  } catch (const std::bad_alloc&) {
    throw ResourceError("cannot allocate " + std::to_string(total) + " table slots");
  }
}

void BlockedTable::reject_overflow(const std::string& what) {
  ++growth_events_;
  throw CapacityError(what);
}

void BlockedTable::push_back_row(std::size_t k, std::span<const Index> values) {
  if (filled_[k] >= rows_[k] || values.size() != width(k)) {
    reject_overflow("bucket " + std::to_string(k) + " is full at " + std::to_string(rows_[k]) +
                    " rows");
  }
  auto r = row(k, filled_[k]);
  std::copy(values.begin(), values.end(), r.begin());
  ++filled_[k];
}

void BlockedTable::add_filled(std::size_t k, Count n) {
  if (n > rows_[k] - filled_[k]) reject_overflow("bucket " + std::to_string(k) + " overfilled");
  filled_[k] += n;
}

bool BlockedTable::exactly_full() const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (filled_[k] != rows_[k]) return false;
  }
  return true;
}

SizedFamily<Index> BlockedTable::to_family() const {
  SizedFamily<Index> f(capacity());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    f[k].reserve(rows_[k]);
    for (Count i = 0; i < rows_[k]; ++i) {
      auto r = row(k, i);
      f[k].emplace_back(r.begin(), r.end());
    }
  }
  return f;
}

SizedFamily<Label> BlockedTable::to_family(std::span<const Label> labels) const {
  SizedFamily<Label> f(capacity());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    f[k].reserve(rows_[k]);
    for (Count i = 0; i < rows_[k]; ++i) {
      Config<Label> c;
      c.reserve(k);
      for (Index e : row(k, i)) c.push_back(labels[e]);
      f[k].push_back(std::move(c));
    }
  }
  return f;
}

bool BlockedTable::same_contents(const BlockedTable& other) const {
  if (rows_ != other.rows_) return false;
  for (std::size_t k = 1; k < rows_.size(); ++k) {
    auto a = elements(k);
    auto b = other.elements(k);
    if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) return false;
  }
  return true;
}

}  // namespace cgen
