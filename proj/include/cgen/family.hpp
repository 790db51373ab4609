#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "cgen/errors.hpp"

namespace cgen {

/// A single combination or permutation: element values in generation order.
template <class T>
using Config = std::vector<T>;

template <class T>
using Bucket = std::vector<Config<T>>;

/// K+1 buckets; bucket k holds configurations of length exactly k.
///
/// Buckets for k larger than the ground set stay present and empty, so two
/// families of the same capacity can always be convolved bucket by bucket.
template <class T>
class SizedFamily {
 public:
  using value_type = T;

  SizedFamily() : buckets_(1) {}
  explicit SizedFamily(std::size_t capacity) : buckets_(capacity + 1) {}
  explicit SizedFamily(std::vector<Bucket<T>> buckets) : buckets_(std::move(buckets)) {
    if (buckets_.empty()) throw PreconditionError("a sized family needs at least bucket 0");
  }

  /// [[[]], []^K]: the unit of convolution.
  static SizedFamily unit(std::size_t capacity) {
    SizedFamily f(capacity);
    f.buckets_[0].emplace_back();
    return f;
  }

  /// K+1 empty buckets: the annihilator.
  static SizedFamily blank(std::size_t capacity) { return SizedFamily(capacity); }

  /// [[[]], [[x]], []^(K-1)], or [[[]]] when K = 0.
  static SizedFamily single(const T& x, std::size_t capacity) {
    SizedFamily f = unit(capacity);
    if (capacity >= 1) f.buckets_[1].push_back(Config<T>{x});
    return f;
  }

  std::size_t capacity() const { return buckets_.size() - 1; }

  Bucket<T>& operator[](std::size_t k) { return buckets_[k]; }
  const Bucket<T>& operator[](std::size_t k) const { return buckets_[k]; }

  auto begin() { return buckets_.begin(); }
  auto end() { return buckets_.end(); }
  auto begin() const { return buckets_.begin(); }
  auto end() const { return buckets_.end(); }

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> s;
    s.reserve(buckets_.size());
    for (const auto& b : buckets_) s.push_back(b.size());
    return s;
  }

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& b : buckets_) n += b.size();
    return n;
  }

  bool operator==(const SizedFamily&) const = default;

 private:
  std::vector<Bucket<T>> buckets_;
};

/// Integer-rank counterpart of SizedFamily: bucket k is a sequence of ranks.
class RankFamily {
 public:
  using Rank = std::uint64_t;

  explicit RankFamily(std::size_t capacity) : buckets_(capacity + 1) {}
  explicit RankFamily(std::vector<std::vector<Rank>> buckets) : buckets_(std::move(buckets)) {}

  std::size_t capacity() const { return buckets_.size() - 1; }
  std::vector<Rank>& operator[](std::size_t k) { return buckets_[k]; }
  const std::vector<Rank>& operator[](std::size_t k) const { return buckets_[k]; }
  auto begin() const { return buckets_.begin(); }
  auto end() const { return buckets_.end(); }

  bool operator==(const RankFamily&) const = default;

 private:
  std::vector<std::vector<Rank>> buckets_;
};

/// Copy of `family` with bucket d emptied.
template <class T>
SizedFamily<T> set_empty(std::size_t d, SizedFamily<T> family) {
  if (d > family.capacity()) {
    throw PreconditionError("setEmpty: bucket " + std::to_string(d) + " outside capacity " +
                            std::to_string(family.capacity()));
  }
  family[d].clear();
  return family;
}

/// The same on a plain list of lists: entry d becomes empty.
template <class E>
std::vector<std::vector<E>> set_empty(std::size_t d, std::vector<std::vector<E>> xs) {
  if (d >= xs.size()) {
    throw PreconditionError("setEmpty: index " + std::to_string(d) + " outside a list of " +
                            std::to_string(xs.size()));
  }
  xs[d].clear();
  return xs;
}

/// Replaces element values through `labels` (value i becomes labels[i]).
template <class L, class I>
SizedFamily<L> relabel(const SizedFamily<I>& family, std::span<const L> labels) {
  SizedFamily<L> out(family.capacity());
  for (std::size_t k = 0; k <= family.capacity(); ++k) {
    out[k].reserve(family[k].size());
    for (const auto& c : family[k]) {
      Config<L> r;
      r.reserve(c.size());
      for (const auto& e : c) r.push_back(labels[static_cast<std::size_t>(e)]);
      out[k].push_back(std::move(r));
    }
  }
  return out;
}

// Bracketed rendering in list notation, e.g. [[[]],[[1],[2]],[[1,2]]].

namespace detail {
template <class T>
struct is_vector : std::false_type {};
template <class T, class A>
struct is_vector<std::vector<T, A>> : std::true_type {};
template <class T>
struct is_sized_family : std::false_type {};
template <class T>
struct is_sized_family<SizedFamily<T>> : std::true_type {};
}  // namespace detail

template <class T>
void write_list(std::ostream& os, const T& value) {
  if constexpr (detail::is_vector<T>::value) {
    os << '[';
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (i) os << ',';
      write_list(os, value[i]);
    }
    os << ']';
  } else if constexpr (detail::is_sized_family<T>::value) {
    os << '[';
    for (std::size_t k = 0; k <= value.capacity(); ++k) {
      if (k) os << ',';
      write_list(os, value[k]);
    }
    os << ']';
  } else {
    os << value;
  }
}

inline void write_list(std::ostream& os, const RankFamily& value) {
  os << '[';
  for (std::size_t k = 0; k <= value.capacity(); ++k) {
    if (k) os << ',';
    write_list(os, value[k]);
  }
  os << ']';
}

template <class T>
std::string to_string(const T& value) {
  std::ostringstream os;
  write_list(os, value);
  return os.str();
}

}  // namespace cgen
