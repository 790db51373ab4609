#pragma once

// The two generator semirings over sets of configurations: union with
// cross-join, and union with merge (all order-preserving riffles). Both
// share the unit [[]] and the annihilator [].

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "cgen/binomial.hpp"
#include "cgen/errors.hpp"
#include "cgen/family.hpp"

namespace cgen {

/// [x ++ y | x <- xs, y <- ys], xs in the outer loop.
template <class T>
Bucket<T> cross_join(const Bucket<T>& xs, const Bucket<T>& ys) {
  Bucket<T> out;
  out.reserve(xs.size() * ys.size());
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      Config<T> c;
      c.reserve(x.size() + y.size());
      c.insert(c.end(), x.begin(), x.end());
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

namespace detail {
template <class T>
void interleave_into(std::span<const T> xs, std::span<const T> ys, Config<T>& prefix,
                     Bucket<T>& out) {
  if (ys.empty() || xs.empty()) {
    Config<T> c = prefix;
    c.insert(c.end(), xs.begin(), xs.end());
    c.insert(c.end(), ys.begin(), ys.end());
    out.push_back(std::move(c));
    return;
  }
  prefix.push_back(xs.front());
  interleave_into(xs.subspan(1), ys, prefix, out);
  prefix.back() = ys.front();
  interleave_into(xs, ys.subspan(1), prefix, out);
  prefix.pop_back();
}
}  // namespace detail

/// Every riffle of x and y keeping the relative order of each; the branch
/// taking the head of x comes before the branch taking the head of y.
template <class T>
Bucket<T> interleave(const Config<T>& x, const Config<T>& y) {
  Bucket<T> out;
  Config<T> prefix;
  prefix.reserve(x.size() + y.size());
  detail::interleave_into<T>(x, y, prefix, out);
  return out;
}

/// concat [interleave(x, y) | x <- xs, y <- ys].
template <class T>
Bucket<T> merge(const Bucket<T>& xs, const Bucket<T>& ys) {
  Bucket<T> out;
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      Config<T> prefix;
      detail::interleave_into<T>(x, y, prefix, out);
    }
  }
  return out;
}

/// Bucket product for the cross-join semiring. Appends to `out`.
struct CrossJoin {
  template <class T>
  void operator()(const Bucket<T>& xs, const Bucket<T>& ys, Bucket<T>& out) const {
    auto p = cross_join(xs, ys);
    out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  }
  /// Outputs contributed by one pair of configs of lengths a and b.
  static Count per_pair(std::size_t, std::size_t) { return 1; }
};

/// Bucket product for the merge semiring. Appends to `out`.
struct Merge {
  template <class T>
  void operator()(const Bucket<T>& xs, const Bucket<T>& ys, Bucket<T>& out) const {
    auto p = merge(xs, ys);
    out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  }
  static Count per_pair(std::size_t a, std::size_t b) { return binomial(a + b, a); }
};

/// All reversed initial segments, shortest first: [1,2,3] -> [[],[1],[2,1],[3,2,1]].
/// Each segment is built from the previous one, O(N^2) element copies total.
template <class T>
std::vector<std::vector<T>> rev_inits(std::span<const T> xs) {
  std::vector<std::vector<T>> out;
  out.reserve(xs.size() + 1);
  out.emplace_back();
  for (const auto& x : xs) {
    std::vector<T> next;
    next.reserve(out.back().size() + 1);
    next.push_back(x);
    next.insert(next.end(), out.back().begin(), out.back().end());
    out.push_back(std::move(next));
  }
  return out;
}

// Total versions of the list primitives: both return [] on [].
template <class T>
std::vector<T> init(std::vector<T> xs) {
  if (!xs.empty()) xs.pop_back();
  return xs;
}

template <class T>
std::vector<T> tail(std::vector<T> xs) {
  if (!xs.empty()) xs.erase(xs.begin());
  return xs;
}

namespace detail {
template <class T>
void require_same_capacity(const SizedFamily<T>& a, const SizedFamily<T>& b, const char* op) {
  if (a.capacity() != b.capacity()) {
    throw PreconditionError(std::string(op) + ": capacity mismatch (" +
                            std::to_string(a.capacity()) + " vs " + std::to_string(b.capacity()) +
                            ")");
  }
}

template <class T>
std::vector<const Bucket<T>*> bucket_refs(const SizedFamily<T>& f) {
  std::vector<const Bucket<T>*> refs;
  refs.reserve(f.capacity() + 1);
  for (const auto& b : f) refs.push_back(&b);
  return refs;
}
}  // namespace detail

/// Bucket k of the result is the union over j = 0..k of op(xss[k-j], yss[j]),
/// j ascending. The reversed prefixes [xss[k], ..., xss[0]] come from rev_inits
/// over bucket references, so no bucket is copied to build them.
template <class T, class Product>
SizedFamily<T> convol(Product op, const SizedFamily<T>& xss, const SizedFamily<T>& yss) {
  detail::require_same_capacity(xss, yss, "convol");
  const std::size_t K = xss.capacity();
  const auto xrefs = detail::bucket_refs(xss);
  const auto prefixes = rev_inits<const Bucket<T>*>(xrefs);
  SizedFamily<T> out(K);
  for (std::size_t k = 0; k <= K; ++k) {
    const auto& css = prefixes[k + 1];
    for (std::size_t j = 0; j < css.size(); ++j) op(*css[j], yss[j], out[k]);
  }
  return out;
}

/// Like convol, but each zipped product drops the first and last entry of
/// both operand lists, keeping only products that draw from both sides.
template <class T, class Product>
SizedFamily<T> convol_new(Product op, const SizedFamily<T>& xss, const SizedFamily<T>& yss) {
  detail::require_same_capacity(xss, yss, "convolNew");
  const std::size_t K = xss.capacity();
  const auto xrefs = detail::bucket_refs(xss);
  const auto prefixes = rev_inits<const Bucket<T>*>(xrefs);
  const auto ymid = init(tail(detail::bucket_refs(yss)));
  SizedFamily<T> out(K);
  for (std::size_t k = 0; k <= K; ++k) {
    const auto xmid = init(tail(prefixes[k + 1]));
    const std::size_t n = std::min(xmid.size(), ymid.size());
    for (std::size_t j = 0; j < n; ++j) op(*xmid[j], *ymid[j], out[k]);
  }
  return out;
}

}  // namespace cgen
