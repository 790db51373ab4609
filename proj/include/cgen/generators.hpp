#pragma once

// Flat generators: K-combinations (divide-and-conquer, sequential,
// revolving-door, integer ranks) and divide-and-conquer K-permutations.
//
// The templates take the ground set as a span of element values and return
// SizedFamily<T>. The blocked variants at the bottom fill a BlockedTable in
// place and work on positions 0..N-1.

#include <cstddef>
#include <span>
#include <string>

#include "cgen/blocked_table.hpp"
#include "cgen/family.hpp"
#include "cgen/ground_set.hpp"
#include "cgen/semiring.hpp"
#include "cgen/split_plan.hpp"

namespace cgen {

/// bucket[k] := map(x:, bucket[k-1]) ++ bucket[k] for k = K..1.
template <class T>
SizedFamily<T> for_step(const T& x, const SizedFamily<T>& family) {
  SizedFamily<T> out(family.capacity());
  out[0] = family[0];
  for (std::size_t k = family.capacity(); k >= 1; --k) {
    auto& b = out[k];
    b.reserve(family[k - 1].size() + family[k].size());
    for (const auto& c : family[k - 1]) {
      Config<T> e;
      e.reserve(c.size() + 1);
      e.push_back(x);
      e.insert(e.end(), c.begin(), c.end());
      b.push_back(std::move(e));
    }
    b.insert(b.end(), family[k].begin(), family[k].end());
  }
  return out;
}

namespace detail {

template <class T>
SizedFamily<T> kcombs_seq_unchecked(std::size_t K, std::span<const T> xs) {
  auto family = SizedFamily<T>::unit(K);
  for (std::size_t i = xs.size(); i-- > 0;) family = for_step(xs[i], family);
  return family;
}

inline void require_plan(const SplitPlan& plan, std::size_t n) {
  if (plan.ground_size() != n) {
    throw PreconditionError("split plan covers " + std::to_string(plan.ground_size()) +
                            " positions but the ground set has " + std::to_string(n));
  }
}

template <class T>
SizedFamily<T> kcombs_dc_node(std::size_t K, std::span<const T> xs, const SplitPlan& plan,
                              std::size_t id) {
  const auto& n = plan.node(id);
  if (plan.runs_sequentially(id)) return kcombs_seq_unchecked(K, xs.subspan(n.begin, n.size()));
  return convol(CrossJoin{}, kcombs_dc_node(K, xs, plan, static_cast<std::size_t>(n.left)),
                kcombs_dc_node(K, xs, plan, static_cast<std::size_t>(n.right)));
}

template <class T>
SizedFamily<T> kperms_dc_node(std::size_t K, std::span<const T> xs, const SplitPlan& plan,
                              std::size_t id) {
  const auto& n = plan.node(id);
  if (n.is_leaf()) {
    return n.size() == 0 ? SizedFamily<T>::unit(K) : SizedFamily<T>::single(xs[n.begin], K);
  }
  return convol(Merge{}, kperms_dc_node(K, xs, plan, static_cast<std::size_t>(n.left)),
                kperms_dc_node(K, xs, plan, static_cast<std::size_t>(n.right)));
}

}  // namespace detail

/// All k-subsets for k <= K as a right fold of for_step over xs.
template <class T>
SizedFamily<T> kcombs_seq(std::size_t K, std::span<const T> xs) {
  require_distinct(xs);
  return detail::kcombs_seq_unchecked(K, xs);
}

/// Divide-and-conquer K-combinations: convol(cross-join) of the two halves
/// chosen by `plan`; subtrees within the plan's threshold run kcombs_seq.
template <class T>
SizedFamily<T> kcombs_dc(std::size_t K, std::span<const T> xs, const SplitPlan& plan) {
  require_distinct(xs);
  detail::require_plan(plan, xs.size());
  return detail::kcombs_dc_node(K, xs, plan, plan.root());
}

/// Canonical split: midpoint recursion all the way down to single elements.
template <class T>
SizedFamily<T> kcombs_dc(std::size_t K, std::span<const T> xs) {
  return kcombs_dc(K, xs, SplitPlan::midpoint(xs.size()));
}

/// Divide-and-conquer K-permutations: convol(merge) of the two halves. The
/// plan's threshold only affects scheduling, never the output order.
template <class T>
SizedFamily<T> kperms_dc(std::size_t K, std::span<const T> xs, const SplitPlan& plan) {
  require_distinct(xs);
  detail::require_plan(plan, xs.size());
  return detail::kperms_dc_node(K, xs, plan, plan.root());
}

template <class T>
SizedFamily<T> kperms_dc(std::size_t K, std::span<const T> xs) {
  return kperms_dc(K, xs, SplitPlan::midpoint(xs.size()));
}

/// bucket[k] := bucket[k] ++ reverse(map(++[x], bucket[k-1])) for k = K..1.
SizedFamily<Label> for_revol(Label x, const SizedFamily<Label>& family);

/// K-combinations of labels 1..N in revolving-door order: for_revol folded
/// from the right over [1, ..., N], so N is absorbed first and 1 last.
SizedFamily<Label> kcombs_revol(std::size_t K, std::size_t N);

/// One absorption step of the rank generator after `n` items:
/// bucket[k] := bucket[k] ++ map((C(n+1,k)-1) -, reverse(bucket[k-1])).
RankFamily for_revol_int(std::size_t n, const RankFamily& family);

/// Ranks of the revolving-door K-combinations of N items; position i of
/// kcombs_revol(K, N)[k] carries rank result[k][i].
RankFamily kcombs_revol_int(std::size_t K, std::size_t N);

// In-place variants over preallocated tables.

/// Row counts C(n, k) for k = 0..K.
std::vector<Count> combination_rows(std::size_t K, std::size_t n);

/// Fills an empty table shaped by combination_rows(K, end - begin) with the
/// sequential generator over positions [begin, end). New rows are written in
/// front of the existing block of each bucket, k descending, so no row that
/// is already in place moves.
void kcombs_seq_into(BlockedTable& table, Index begin, Index end);
BlockedTable kcombs_seq_blocked(std::size_t K, std::size_t N);

/// In-place revolving-door generator; position p stands for label p+1.
/// Rows are appended after each bucket's existing block, k descending.
BlockedTable kcombs_revol_blocked(std::size_t K, std::size_t N);

}  // namespace cgen
