#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cgen {

using Count = std::uint64_t;

// Checked 64-bit arithmetic; both throw OverflowError.
Count checked_add(Count a, Count b);
Count checked_mul(Count a, Count b);

/// C(n, k) via the Pascal recurrence in checked arithmetic. Zero when k > n.
Count binomial(std::uint64_t n, std::uint64_t k);

/// n (n-1) ... (n-k+1), the number of k-permutations of n items.
Count falling_factorial(std::uint64_t n, std::uint64_t k);

/// Precomputed C(n, k) for n <= n_max, k <= k_max.
///
/// Entries that do not fit in 64 bits are remembered as overflowed and only
/// throw when they are read, so a table can be built for a range that is
/// partly unrepresentable.
class BinomialTable {
 public:
  BinomialTable(std::size_t n_max, std::size_t k_max);

  std::size_t n_max() const { return n_max_; }
  std::size_t k_max() const { return k_max_; }

  /// Throws PreconditionError outside the table, OverflowError on an
  /// overflowed entry.
  Count at(std::size_t n, std::size_t k) const;
  bool representable(std::size_t n, std::size_t k) const;

 private:
  std::size_t n_max_;
  std::size_t k_max_;
  std::vector<Count> values_;
  std::vector<bool> overflowed_;
};

}  // namespace cgen
