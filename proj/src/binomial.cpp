#include "cgen/binomial.hpp"

#include <algorithm>
#include <string>

#include "cgen/errors.hpp"

namespace cgen {

Count checked_add(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("rank overflow: " + std::to_string(a) + " + " + std::to_string(b) +
                        " exceeds 64 bits");
  }
  return r;
}

Count checked_mul(Count a, Count b) {
  Count r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("rank overflow: " + std::to_string(a) + " * " + std::to_string(b) +
                        " exceeds 64 bits");
  }
  return r;
}

Count binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  // row[j] = C(i, j) for the current i, j <= k
  std::vector<Count> row(k + 1, 0);
  row[0] = 1;
  for (std::uint64_t i = 1; i <= n; ++i) {
    for (std::uint64_t j = std::min<std::uint64_t>(i, k); j >= 1; --j) {
      Count r;
      if (__builtin_add_overflow(row[j], row[j - 1], &r)) {
        throw OverflowError("rank overflow: C(" + std::to_string(n) + "," + std::to_string(k) +
                            ") exceeds 64 bits");
      }
      row[j] = r;
    }
  }
  return row[k];
}

Count falling_factorial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  Count r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = checked_mul(r, n - i);
  return r;
}

BinomialTable::BinomialTable(std::size_t n_max, std::size_t k_max)
    : n_max_(n_max),
      k_max_(k_max),
      values_((n_max + 1) * (k_max + 1), 0),
      overflowed_((n_max + 1) * (k_max + 1), false) {
  const auto idx = [&](std::size_t n, std::size_t k) { return n * (k_max_ + 1) + k; };
  for (std::size_t n = 0; n <= n_max_; ++n) {
    values_[idx(n, 0)] = 1;
    for (std::size_t k = 1; k <= k_max_ && k <= n; ++k) {
      if (n == k) {
        values_[idx(n, k)] = 1;
        continue;
      }
      const bool of = overflowed_[idx(n - 1, k)] || overflowed_[idx(n - 1, k - 1)];
      Count r = 0;
      if (of || __builtin_add_overflow(values_[idx(n - 1, k)], values_[idx(n - 1, k - 1)], &r)) {
        overflowed_[idx(n, k)] = true;
      } else {
        values_[idx(n, k)] = r;
      }
    }
  }
}

bool BinomialTable::representable(std::size_t n, std::size_t k) const {
  if (n > n_max_ || k > k_max_) return false;
  return !overflowed_[n * (k_max_ + 1) + k];
}

Count BinomialTable::at(std::size_t n, std::size_t k) const {
  if (n > n_max_ || k > k_max_) {
    throw PreconditionError("binomial table lookup C(" + std::to_string(n) + "," +
                            std::to_string(k) + ") outside the precomputed range");
  }
  if (overflowed_[n * (k_max_ + 1) + k]) {
    throw OverflowError("rank overflow: C(" + std::to_string(n) + "," + std::to_string(k) +
                        ") exceeds 64 bits");
  }
  return values_[n * (k_max_ + 1) + k];
}

}  // namespace cgen
