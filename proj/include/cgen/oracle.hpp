#pragma once

// Brute-force references and property checkers.
//
// Checkers never throw on a failing property; they return a report whose
// counterexample names the first offending pair of configurations.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cgen/family.hpp"
#include "cgen/ground_set.hpp"
#include "cgen/nested.hpp"
#include "cgen/split_plan.hpp"

namespace cgen {

inline constexpr std::size_t kBruteCombsMaxN = 24;
inline constexpr std::size_t kBrutePermsMaxN = 10;

/// Every subset of labels 1..N with at most K elements, listed in counting
/// order of the bitmask, elements ascending. Refuses N > 24.
SizedFamily<Label> brute_combs(std::size_t N, std::size_t K);

/// Every ordered arrangement of at most K labels out of 1..N by recursive
/// selection. Refuses N > 10.
SizedFamily<Label> brute_perms(std::size_t N, std::size_t K);

struct Counterexample {
  std::size_t bucket = 0;
  std::string first;
  std::string second;
  std::string symmetric_difference;
  std::string note;
};

struct PropertyReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  bool pass = true;
  std::optional<Counterexample> counterexample;

  /// One-line JSON record: name, params, pass, counterexample.
  std::string to_json_line() const;
};

/// Whether configurations compare as sets or as sequences.
enum class Order { unordered, ordered };

namespace detail {

template <class T>
T canonical_atom(T x) {
  return x;
}

// Atoms of the outer layer are inner combinations.
template <class T>
Config<T> canonical_atom(Config<T> x) {
  std::sort(x.begin(), x.end());
  return x;
}

template <class T>
Config<T> canonical_config(const Config<T>& c, Order order) {
  Config<T> out;
  out.reserve(c.size());
  for (const auto& e : c) out.push_back(canonical_atom(e));
  if (order == Order::unordered) std::sort(out.begin(), out.end());
  return out;
}

template <class T>
std::string element_set_difference(const Config<T>& a, const Config<T>& b) {
  auto x = canonical_config(a, Order::unordered);
  auto y = canonical_config(b, Order::unordered);
  Config<T> d;
  std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(d));
  return to_string(d);
}

template <class T>
std::size_t element_set_difference_size(const Config<T>& a, const Config<T>& b) {
  auto x = canonical_config(a, Order::unordered);
  auto y = canonical_config(b, Order::unordered);
  Config<T> d;
  std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(d));
  return d.size();
}

}  // namespace detail

/// Canonical form of a bucket: each config canonicalized, then the bucket sorted.
template <class T>
Bucket<T> canonical_bucket(const Bucket<T>& b, Order order) {
  Bucket<T> out;
  out.reserve(b.size());
  for (const auto& c : b) out.push_back(detail::canonical_config(c, order));
  std::sort(out.begin(), out.end());
  return out;
}

/// Passes iff both families have the same capacity and equal bucket
/// multisets after canonicalization.
template <class T>
PropertyReport compare_multisets(std::string name,
                                 std::vector<std::pair<std::string, std::string>> params,
                                 const SizedFamily<T>& candidate, const SizedFamily<T>& reference,
                                 Order order) {
  PropertyReport r{std::move(name), std::move(params), true, std::nullopt};
  if (candidate.capacity() != reference.capacity()) {
    r.pass = false;
    r.counterexample = Counterexample{0, "", "", "",
                                      "capacity " + std::to_string(candidate.capacity()) +
                                          " vs " + std::to_string(reference.capacity())};
    return r;
  }
  for (std::size_t k = 0; k <= candidate.capacity(); ++k) {
    const auto a = canonical_bucket(candidate[k], order);
    const auto b = canonical_bucket(reference[k], order);
    if (a == b) continue;
    // First position where the sorted buckets disagree.
    auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
    Counterexample cx;
    cx.bucket = k;
    if (ia != a.end()) cx.first = to_string(*ia);
    if (ib != b.end()) cx.second = to_string(*ib);
    if (ia != a.end() && ib != b.end()) {
      cx.symmetric_difference = detail::element_set_difference(*ia, *ib);
    }
    const bool extra = ib == b.end() || (ia != a.end() && *ia < *ib);
    cx.note = extra ? "first is unexpected in the candidate"
                    : "second is missing from the candidate";
    cx.note += " (bucket sizes " + std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
               ")";
    r.pass = false;
    r.counterexample = std::move(cx);
    return r;
  }
  return r;
}

/// Passes iff, for every k >= 1, each cyclically adjacent pair of bucket k
/// differs by exactly two elements. Buckets with fewer than two entries pass.
template <class T>
PropertyReport check_revolving_door(const SizedFamily<T>& family,
                                    std::vector<std::pair<std::string, std::string>> params = {}) {
  PropertyReport r{"revolving-door", std::move(params), true, std::nullopt};
  for (std::size_t k = 1; k <= family.capacity(); ++k) {
    const auto& b = family[k];
    if (b.size() < 2) continue;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto& x = b[i];
      const auto& y = b[(i + 1) % b.size()];
      const std::size_t d = detail::element_set_difference_size(x, y);
      if (d == 2) continue;
      r.pass = false;
      r.counterexample = Counterexample{k, to_string(x), to_string(y),
                                        detail::element_set_difference(x, y),
                                        "positions " + std::to_string(i) + " and " +
                                            std::to_string((i + 1) % b.size()) + " differ by " +
                                            std::to_string(d)};
      return r;
    }
  }
  return r;
}

/// Revolving-door rank of a combination of labels 1..N, computed in closed
/// form from its elements rather than from the generation order.
Count revolving_door_rank(std::span<const Label> config, std::size_t N);

/// Passes iff every ranks[k] is a permutation of 0..C(N,k)-1 and the rank at
/// each position equals the closed-form rank of the configuration at the same
/// position of `configs`.
PropertyReport check_rank_data(const RankFamily& ranks, const SizedFamily<Label>& configs,
                               std::size_t N,
                               std::vector<std::pair<std::string, std::string>> params = {});

/// check_rank_data on the integer and value revolving-door generators.
PropertyReport check_rank_consistency(std::size_t K, std::size_t N);

/// The fused generator under test in check_fusion.
enum class FusionVariant { dc, seq, revol, multi, perms };

/// Outer multiset of the fused generator against its two-phase reference.
/// `ds` holds a single D for every variant except multi. The revol variant
/// runs on labels 1..|xs| and ignores the values and the plan.
PropertyReport check_fusion(FusionVariant v, std::size_t K, const InnerSizeSet& ds,
                            std::span<const Label> xs, const SplitPlan& plan);
PropertyReport check_fusion(std::size_t K, std::size_t D, std::span<const Label> xs);

/// Compares the inner and outer families of a nested result with a reference.
PropertyReport compare_nested(std::string name,
                              std::vector<std::pair<std::string, std::string>> params,
                              const NestedResult<Label>& candidate,
                              const NestedResult<Label>& reference, Order outer_order);

}  // namespace cgen
