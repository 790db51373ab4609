#pragma once

// Nested generators: outer K-combinations (or K-permutations) whose atoms
// are inner D-combinations of the ground set.
//
// Every variant returns the pair (inner, outer). The inner family is the
// D-combination generator's state with bucket D emptied; the outer family
// holds the atoms by value, or by revolving-door rank in the integer form.

#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cgen/family.hpp"
#include "cgen/generators.hpp"
#include "cgen/ground_set.hpp"
#include "cgen/semiring.hpp"
#include "cgen/split_plan.hpp"

namespace cgen {

template <class T>
struct NestedResult {
  SizedFamily<T> inner;
  SizedFamily<Config<T>> outer;

  bool operator==(const NestedResult&) const = default;
};

struct NestedRankResult {
  RankFamily inner;
  SizedFamily<RankFamily::Rank> outer;

  bool operator==(const NestedRankResult&) const = default;
};

template <class T>
std::string to_string(const NestedResult<T>& r) {
  std::ostringstream os;
  os << '(';
  write_list(os, r.inner);
  os << ',';
  write_list(os, r.outer);
  os << ')';
  return os.str();
}

inline std::string to_string(const NestedRankResult& r) {
  std::ostringstream os;
  os << '(';
  write_list(os, r.inner);
  os << ',';
  write_list(os, r.outer);
  os << ')';
  return os.str();
}

/// Strictly increasing inner sizes, each at least 2.
class InnerSizeSet {
 public:
  explicit InnerSizeSet(std::vector<std::size_t> sizes);
  static InnerSizeSet parse(const std::string& csv);

  std::span<const std::size_t> sizes() const { return sizes_; }
  /// Capacity of the inner recursion.
  std::size_t max() const { return sizes_.back(); }

 private:
  std::vector<std::size_t> sizes_;
};

/// Throws PreconditionError for D < 2.
void require_inner_size(std::size_t D);

namespace detail {

template <class T>
using NestedPair = std::pair<SizedFamily<T>, SizedFamily<Config<T>>>;

template <class T>
NestedPair<T> nested_leaf(std::size_t K, std::size_t inner_cap, std::span<const T> xs,
                          const SplitPlan::Node& n) {
  auto inner = n.size() == 0 ? SizedFamily<T>::unit(inner_cap)
                             : SizedFamily<T>::single(xs[n.begin], inner_cap);
  return {std::move(inner), SizedFamily<Config<T>>::unit(K)};
}

// One recursion shared by the single-size combination and permutation
// generators: the new inner D-combinations are bucket D of the combined
// inner family, whose halves already had bucket D emptied.
template <class T, class OuterProduct, class OuterGen>
NestedPair<T> nested_single_node(std::size_t K, std::size_t D, std::span<const T> xs,
                                 const SplitPlan& plan, std::size_t id, OuterProduct op,
                                 const OuterGen& outer_gen) {
  const auto& n = plan.node(id);
  if (n.is_leaf()) return nested_leaf(K, D, xs, n);
  auto [css1, ncss1] = nested_single_node(K, D, xs, plan, static_cast<std::size_t>(n.left), op,
                                          outer_gen);
  auto [css2, ncss2] = nested_single_node(K, D, xs, plan, static_cast<std::size_t>(n.right), op,
                                          outer_gen);
  auto css = convol(CrossJoin{}, css1, css2);
  const auto& fresh = css[D];
  SizedFamily<Config<T>> ncss = fresh.empty()
                                    ? SizedFamily<Config<T>>::unit(K)
                                    : convol(op, convol(op, ncss1, ncss2), outer_gen(K, fresh));
  return {set_empty(D, std::move(css)), std::move(ncss)};
}

template <class T>
NestedPair<T> nested_multi_node(std::size_t K, const InnerSizeSet& ds, std::span<const T> xs,
                                const SplitPlan& plan, std::size_t id) {
  const auto& n = plan.node(id);
  const std::size_t top = ds.max();
  if (n.is_leaf()) return nested_leaf(K, top, xs, n);
  auto [css1, ncss1] = nested_multi_node(K, ds, xs, plan, static_cast<std::size_t>(n.left));
  auto [css2, ncss2] = nested_multi_node(K, ds, xs, plan, static_cast<std::size_t>(n.right));
  const auto created = convol_new(CrossJoin{}, css1, css2);
  Bucket<T> fresh;
  for (std::size_t d : ds.sizes()) fresh.insert(fresh.end(), created[d].begin(), created[d].end());
  SizedFamily<Config<T>> ncss =
      fresh.empty() ? SizedFamily<Config<T>>::unit(K)
                    : convol(CrossJoin{}, convol(CrossJoin{}, ncss1, ncss2),
                             kcombs_seq_unchecked<Config<T>>(K, fresh));
  return {set_empty(top, convol(CrossJoin{}, css1, css2)), std::move(ncss)};
}

}  // namespace detail

/// Two-phase reference: all D-combinations first, then K-combinations of
/// those as atoms. Used as the oracle for the fused generators.
template <class T>
NestedResult<T> nested_combs_spec(std::size_t K, std::size_t D, std::span<const T> xs) {
  require_inner_size(D);
  auto css = kcombs_dc(D, xs);
  auto outer = detail::kcombs_seq_unchecked<Config<T>>(K, css[D]);
  return {set_empty(D, std::move(css)), std::move(outer)};
}

/// Fused divide-and-conquer nested combination generator.
template <class T>
NestedResult<T> nested_combs_dc(std::size_t K, std::size_t D, std::span<const T> xs,
                                const SplitPlan& plan) {
  require_inner_size(D);
  require_distinct(xs);
  detail::require_plan(plan, xs.size());
  auto gen = [](std::size_t k, const Bucket<T>& atoms) {
    return detail::kcombs_seq_unchecked<Config<T>>(k, atoms);
  };
  auto [inner, outer] = detail::nested_single_node(K, D, xs, plan, plan.root(), CrossJoin{}, gen);
  return {std::move(inner), std::move(outer)};
}

template <class T>
NestedResult<T> nested_combs_dc(std::size_t K, std::size_t D, std::span<const T> xs) {
  return nested_combs_dc(K, D, xs, SplitPlan::midpoint(xs.size()));
}

/// Sequential fusion: each absorbed element contributes the D-combinations
/// it completes, and those are combined in front of the previous outer family.
template <class T>
NestedResult<T> nested_combs_seq(std::size_t K, std::size_t D, std::span<const T> xs) {
  require_inner_size(D);
  require_distinct(xs);
  auto css = SizedFamily<T>::unit(D);
  auto ncss = SizedFamily<Config<T>>::unit(K);
  for (std::size_t i = xs.size(); i-- > 0;) {
    css = for_step(xs[i], css);
    if (css[D].empty()) {
      ncss = SizedFamily<Config<T>>::unit(K);
    } else {
      ncss = convol(CrossJoin{}, detail::kcombs_seq_unchecked<Config<T>>(K, css[D]), ncss);
    }
    css[D].clear();
  }
  return {std::move(css), std::move(ncss)};
}

/// Sequential fusion with revolving-door inner order over labels 1..N.
NestedResult<Label> nested_combs_revol(std::size_t K, std::size_t D, std::size_t N);

/// Integer form of nested_combs_revol: atoms are revolving-door ranks.
NestedRankResult nested_combs_revol_int(std::size_t K, std::size_t D, std::size_t N);

/// Reference for the multi-size generator: K-combinations over the union of
/// all d-combinations, d in Ds, concatenated in Ds order.
template <class T>
NestedResult<T> nested_combs_multi_spec(std::size_t K, const InnerSizeSet& ds,
                                        std::span<const T> xs) {
  auto css = kcombs_dc(ds.max(), xs);
  Bucket<T> atoms;
  for (std::size_t d : ds.sizes()) atoms.insert(atoms.end(), css[d].begin(), css[d].end());
  auto outer = detail::kcombs_seq_unchecked<Config<T>>(K, atoms);
  return {set_empty(ds.max(), std::move(css)), std::move(outer)};
}

/// Fused multi-size generator; convol_new feeds only the inner combinations
/// created at each split into the outer recursion.
template <class T>
NestedResult<T> nested_combs_multi(std::size_t K, const InnerSizeSet& ds, std::span<const T> xs,
                                   const SplitPlan& plan) {
  require_distinct(xs);
  detail::require_plan(plan, xs.size());
  auto [inner, outer] = detail::nested_multi_node(K, ds, xs, plan, plan.root());
  return {std::move(inner), std::move(outer)};
}

template <class T>
NestedResult<T> nested_combs_multi(std::size_t K, const InnerSizeSet& ds, std::span<const T> xs) {
  return nested_combs_multi(K, ds, xs, SplitPlan::midpoint(xs.size()));
}

/// Reference for K-permutations of D-combinations.
template <class T>
NestedResult<T> nested_perms_spec(std::size_t K, std::size_t D, std::span<const T> xs) {
  require_inner_size(D);
  auto css = kcombs_dc(D, xs);
  const Bucket<T>& atoms = css[D];
  auto outer = detail::kperms_dc_node<Config<T>>(K, atoms, SplitPlan::midpoint(atoms.size()), 0);
  return {set_empty(D, std::move(css)), std::move(outer)};
}

/// Fused divide-and-conquer K-permutations of D-combinations: the outer
/// product is merge instead of cross-join.
template <class T>
NestedResult<T> nested_perms_dc(std::size_t K, std::size_t D, std::span<const T> xs,
                                const SplitPlan& plan) {
  require_inner_size(D);
  require_distinct(xs);
  detail::require_plan(plan, xs.size());
  auto gen = [](std::size_t k, const Bucket<T>& atoms) {
    return detail::kperms_dc_node<Config<T>>(k, atoms, SplitPlan::midpoint(atoms.size()), 0);
  };
  auto [inner, outer] = detail::nested_single_node(K, D, xs, plan, plan.root(), Merge{}, gen);
  return {std::move(inner), std::move(outer)};
}

template <class T>
NestedResult<T> nested_perms_dc(std::size_t K, std::size_t D, std::span<const T> xs) {
  return nested_perms_dc(K, D, xs, SplitPlan::midpoint(xs.size()));
}

}  // namespace cgen
