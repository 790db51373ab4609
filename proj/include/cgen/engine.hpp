#pragma once

// Parallel executor for the divide-and-conquer generators over blocked
// tables.
//
// Every table is sized from a capacity schedule before any row is written.
// A combine step is cut into slices, one per (k, j) product block or a run
// of its left-hand rows, and each slice writes a disjoint range whose offset
// is known in advance. Sibling subtrees never touch each other's storage, so
// the output does not depend on the worker count or the task interleaving.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cgen/binomial.hpp"
#include "cgen/blocked_table.hpp"
#include "cgen/family.hpp"
#include "cgen/ground_set.hpp"
#include "cgen/nested.hpp"
#include "cgen/split_plan.hpp"

namespace cgen {

enum class Product { cross_join, merge };

/// Outputs contributed by one pair of configs of lengths a and b.
Count outputs_per_pair(Product p, std::size_t a, std::size_t b);

/// Row counts of convol(p, a, b) given the row counts of its operands.
std::vector<Count> convol_rows(Product p, const std::vector<Count>& a, const std::vector<Count>& b);

/// Row counts of a leaf holding `size` (0 or 1) positions.
std::vector<Count> leaf_rows(std::size_t K, std::size_t size);

/// Bucket row counts for every node of a plan.
struct CapacitySchedule {
  Product product = Product::cross_join;
  std::size_t K = 0;
  std::vector<std::vector<Count>> rows;

  const std::vector<Count>& root() const { return rows.front(); }
  /// Total element slots of one node's table.
  Count slots(std::size_t node) const;
};

/// Combination schedules use the cross-join Vandermonde sums, permutation
/// schedules the merge sums. Throws OverflowError when a count leaves 64 bits.
CapacitySchedule plan_capacities(Product p, std::size_t K, const SplitPlan& plan);

/// Table with the scheduled shape of one node.
BlockedTable allocate(const CapacitySchedule& schedule, std::size_t node);

struct EngineOptions {
  std::size_t workers = 1;
  /// Record every write range and count overlaps.
  bool debug_writes = false;
};

struct RunStats {
  std::uint64_t growth_events = 0;
  /// Every table was filled to exactly its planned capacity.
  bool capacity_exact = true;
  std::uint64_t tasks = 0;
  /// Populated in debug mode only.
  std::uint64_t recorded_writes = 0;
  std::uint64_t overlapping_writes = 0;
  /// Largest number of element slots alive at once.
  std::size_t peak_slots = 0;
};

/// Runs `fn(i)` for i in [0, n) on up to `workers` threads. The first
/// exception thrown by any task is rethrown after all threads have joined.
void parallel_for(std::size_t workers, std::size_t n, const std::function<void(std::size_t)>& fn);

/// K-combinations of positions 0..N-1 along `plan`. Subtrees within the
/// plan's threshold run the in-place sequential generator.
BlockedTable run_kcombs(std::size_t K, const SplitPlan& plan, const EngineOptions& opts = {},
                        RunStats* stats = nullptr);

/// K-permutations of positions 0..N-1 along `plan`.
BlockedTable run_kperms(std::size_t K, const SplitPlan& plan, const EngineOptions& opts = {},
                        RunStats* stats = nullptr);

/// Inner configurations created during a nested run, numbered in post-order
/// of the nodes that created them.
class AtomTable {
 public:
  AtomTable() = default;
  explicit AtomTable(std::vector<std::size_t> offsets);

  std::size_t size() const { return offsets_.size() - 1; }
  std::span<const Index> atom(std::size_t id) const {
    return {elements_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
  }
  Index* data_at(std::size_t id) { return elements_.data() + offsets_[id]; }
  std::size_t slot_count() const { return elements_.size(); }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Index> elements_;
};

/// Result of a nested run: the inner table of the root, the atom store and
/// the outer table whose rows are atom ids.
struct NestedRun {
  BlockedTable inner;
  AtomTable atoms;
  BlockedTable outer;

  /// Value form with positions replaced by `labels`.
  NestedResult<Label> to_result(std::span<const Label> labels) const;
};

/// Per-node shapes of a nested run.
struct NestedSchedule {
  Product product = Product::cross_join;
  std::size_t K = 0;
  std::vector<std::size_t> ds;
  std::vector<std::vector<Count>> inner;
  /// Atoms created at each node and the id of the first one.
  std::vector<Count> fresh;
  std::vector<Count> atom_base;
  std::vector<std::vector<Count>> combined;
  std::vector<std::vector<Count>> generated;
  std::vector<std::vector<Count>> outer;
  /// Element offset of every atom, plus the end.
  std::vector<std::size_t> atom_offsets;
};

NestedSchedule plan_nested(Product p, std::size_t K, const InnerSizeSet& ds,
                           const SplitPlan& plan);

/// Fused K-combinations of d-combinations, d in `ds`.
NestedRun run_nested_combs(std::size_t K, const InnerSizeSet& ds, const SplitPlan& plan,
                           const EngineOptions& opts = {}, RunStats* stats = nullptr);

/// Fused K-permutations of D-combinations.
NestedRun run_nested_perms(std::size_t K, std::size_t D, const SplitPlan& plan,
                           const EngineOptions& opts = {}, RunStats* stats = nullptr);

}  // namespace cgen
