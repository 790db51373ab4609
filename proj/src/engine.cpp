#include "cgen/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "cgen/errors.hpp"
#include "cgen/generators.hpp"

namespace cgen {

Count outputs_per_pair(Product p, std::size_t a, std::size_t b) {
  return p == Product::cross_join ? 1 : binomial(a + b, a);
}

std::vector<Count> convol_rows(Product p, const std::vector<Count>& a,
                               const std::vector<Count>& b) {
  if (a.size() != b.size()) throw PreconditionError("convol_rows: capacity mismatch");
  std::vector<Count> out(a.size(), 0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t j = 0; j <= k; ++j) {
      if (a[k - j] == 0 || b[j] == 0) continue;
      out[k] = checked_add(
          out[k], checked_mul(checked_mul(a[k - j], b[j]), outputs_per_pair(p, k - j, j)));
    }
  }
  return out;
}

std::vector<Count> leaf_rows(std::size_t K, std::size_t size) {
  std::vector<Count> rows(K + 1, 0);
  rows[0] = 1;
  if (size == 1 && K >= 1) rows[1] = 1;
  return rows;
}

Count CapacitySchedule::slots(std::size_t node) const {
  Count total = 0;
  const auto& r = rows[node];
  for (std::size_t k = 0; k < r.size(); ++k) {
    total = checked_add(total, checked_mul(r[k], BlockedTable::stride(k)));
  }
  return total;
}

CapacitySchedule plan_capacities(Product p, std::size_t K, const SplitPlan& plan) {
  CapacitySchedule s;
  s.product = p;
  s.K = K;
  s.rows.resize(plan.node_count());
  for (std::size_t id : plan.post_order()) {
    const auto& n = plan.node(id);
    if (n.is_leaf()) {
      s.rows[id] = leaf_rows(K, n.size());
    } else {
      s.rows[id] = convol_rows(p, s.rows[static_cast<std::size_t>(n.left)],
                               s.rows[static_cast<std::size_t>(n.right)]);
    }
  }
  return s;
}

BlockedTable allocate(const CapacitySchedule& schedule, std::size_t node) {
  return BlockedTable(schedule.rows[node]);
}

void parallel_for(std::size_t workers, std::size_t n,
                  const std::function<void(std::size_t)>& fn) {
  if (workers == 0) throw PreconditionError("at least one worker is required");
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    const std::size_t count = std::min(workers, n);
    pool.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= n || failed.load(std::memory_order_relaxed)) return;
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

AtomTable::AtomTable(std::vector<std::size_t> offsets) : offsets_(std::move(offsets)) {
  if (offsets_.empty()) offsets_.push_back(0);
  try {
    elements_.assign(offsets_.back(), 0);
  } catch (const std::bad_alloc&) {
    throw ResourceError("cannot allocate " + std::to_string(offsets_.back()) + " atom slots");
  }
}

NestedResult<Label> NestedRun::to_result(std::span<const Label> labels) const {
  NestedResult<Label> r{inner.to_family(labels), SizedFamily<Config<Label>>(outer.capacity())};
  for (std::size_t k = 0; k <= outer.capacity(); ++k) {
    auto& bucket = r.outer[k];
    bucket.reserve(outer.rows(k));
    for (Count i = 0; i < outer.rows(k); ++i) {
      Config<Config<Label>> c;
      c.reserve(k);
      for (Index id : outer.row(k, i)) {
        Config<Label> a;
        for (Index e : atoms.atom(id)) a.push_back(labels[e]);
        c.push_back(std::move(a));
      }
      bucket.push_back(std::move(c));
    }
  }
  return r;
}

namespace {

// Output rows per slice; big enough to amortize dispatch, small enough to
// spread a single large combine over all workers.
constexpr Count kGrain = 4096;
constexpr std::uint64_t kAtomStoreId = 0;

struct WriteRange {
  std::uint64_t table;
  std::size_t begin;
  std::size_t end;
};

// Bookkeeping shared by all tasks of one run.
class Ledger {
 public:
  explicit Ledger(bool debug) : debug_(debug) {}

  void record(std::uint64_t table, std::size_t begin, std::size_t end) {
    if (!debug_ || begin == end) return;
    std::lock_guard lock(mutex_);
    writes_.push_back({table, begin, end});
  }

  void acquire(std::size_t slots) {
    const std::size_t now = live_.fetch_add(slots) + slots;
    std::size_t peak = peak_.load();
    while (now > peak && !peak_.compare_exchange_weak(peak, now)) {
    }
  }

  // Folds a finished table into the run totals and frees its storage.
  void retire(BlockedTable& t) {
    inspect(t);
    live_.fetch_sub(t.slot_count());
    t = BlockedTable();
  }

  void inspect(const BlockedTable& t) {
    growth_ += t.growth_events();
    if (!t.exactly_full()) exact_ = false;
  }

  void growth_event() { ++growth_; }
  void mark_inexact() { exact_ = false; }
  void count_tasks(std::size_t n) { tasks_ += n; }

  void report(RunStats* stats) {
    if (!stats) return;
    stats->growth_events = growth_;
    stats->capacity_exact = exact_;
    stats->tasks = tasks_;
    stats->peak_slots = peak_;
    stats->recorded_writes = writes_.size();
    std::sort(writes_.begin(), writes_.end(), [](const WriteRange& a, const WriteRange& b) {
      return a.table != b.table ? a.table < b.table : a.begin < b.begin;
    });
    std::uint64_t overlaps = 0;
    for (std::size_t i = 1; i < writes_.size(); ++i) {
      if (writes_[i].table == writes_[i - 1].table && writes_[i].begin < writes_[i - 1].end) {
        ++overlaps;
      }
    }
    stats->overlapping_writes = overlaps;
  }

 private:
  bool debug_;
  std::mutex mutex_;
  std::vector<WriteRange> writes_;
  std::atomic<std::size_t> live_{0};
  std::atomic<std::size_t> peak_{0};
  std::atomic<std::uint64_t> growth_{0};
  std::atomic<bool> exact_{true};
  std::atomic<std::uint64_t> tasks_{0};
};

// Rows x in [x_begin, x_end) of bucket ka of `a`, each paired with every row
// of bucket kb of `b`, written consecutively from dst.
struct Block {
  const BlockedTable* a;
  std::size_t ka;
  const BlockedTable* b;
  std::size_t kb;
  Count x_begin;
  Count x_end;
  Index* dst;
  std::size_t stride;
  std::uint64_t table;
  std::size_t slot_begin;
  std::size_t slot_end;
};

// All a+b riffle patterns in interleave order: 0 takes from the left
// config, 1 from the right; lexicographic with 0 < 1.
std::vector<unsigned char> riffle_patterns(std::size_t a, std::size_t b) {
  std::vector<unsigned char> pattern(a + b, 0);
  std::fill(pattern.begin() + static_cast<std::ptrdiff_t>(a), pattern.end(), 1);
  std::vector<unsigned char> all;
  do {
    all.insert(all.end(), pattern.begin(), pattern.end());
  } while (std::next_permutation(pattern.begin(), pattern.end()));
  return all;
}

void run_block(Product p, const Block& blk) {
  const Count nb = blk.b->rows(blk.kb);
  Index* out = blk.dst;
  if (p == Product::cross_join) {
    for (Count x = blk.x_begin; x < blk.x_end; ++x) {
      const auto xa = blk.a->row(blk.ka, x);
      for (Count y = 0; y < nb; ++y) {
        const auto yb = blk.b->row(blk.kb, y);
        std::copy(yb.begin(), yb.end(), std::copy(xa.begin(), xa.end(), out));
        out += blk.stride;
      }
    }
    return;
  }
  const std::size_t w = blk.ka + blk.kb;
  const auto patterns = riffle_patterns(blk.ka, blk.kb);
  for (Count x = blk.x_begin; x < blk.x_end; ++x) {
    const auto xa = blk.a->row(blk.ka, x);
    for (Count y = 0; y < nb; ++y) {
      const auto yb = blk.b->row(blk.kb, y);
      for (std::size_t s = 0; s < patterns.size(); s += std::max<std::size_t>(w, 1)) {
        const Index* px = xa.data();
        const Index* py = yb.data();
        for (std::size_t t = 0; t < w; ++t) out[t] = patterns[s + t] ? *py++ : *px++;
        out += blk.stride;
        if (w == 0) break;
      }
    }
  }
}

// Cuts one product block (rows of bucket ka of a times bucket kb of b) into
// slices writing `stride`-wide rows from `base`.
void slice_block(Product p, const BlockedTable& a, std::size_t ka, const BlockedTable& b,
                 std::size_t kb, Index* base, std::size_t stride, std::uint64_t table,
                 std::size_t slot_base, std::vector<Block>& out) {
  const Count na = a.rows(ka);
  const Count nb = b.rows(kb);
  if (na == 0 || nb == 0) return;
  const Count per_x = checked_mul(nb, outputs_per_pair(p, ka, kb));
  const Count step = std::max<Count>(1, kGrain / per_x);
  for (Count x0 = 0; x0 < na; x0 += step) {
    const Count x1 = std::min(na, x0 + step);
    const std::size_t first = static_cast<std::size_t>(x0 * per_x) * stride;
    const std::size_t last = static_cast<std::size_t>(x1 * per_x) * stride;
    out.push_back(
        {&a, ka, &b, kb, x0, x1, base + first, stride, table, slot_base + first, slot_base + last});
  }
}

// Plans convol(p, a, b) into `out`, skipping bucket `skip`. The fill counts
// are claimed up front, so an undersized table fails here, before any write.
void slice_convol(Product p, const BlockedTable& a, const BlockedTable& b, BlockedTable& out,
                  std::optional<std::size_t> skip, std::vector<Block>& blocks) {
  for (std::size_t k = 0; k <= out.capacity(); ++k) {
    if (skip && *skip == k) continue;
    Count total = 0;
    for (std::size_t j = 0; j <= k; ++j) {
      total = checked_add(
          total, checked_mul(checked_mul(a.rows(k - j), b.rows(j)), outputs_per_pair(p, k - j, j)));
    }
    out.add_filled(k, total);
    if (total == 0) continue;
    Count row = 0;
    const std::size_t stride = BlockedTable::stride(k);
    for (std::size_t j = 0; j <= k; ++j) {
      const Count n = checked_mul(checked_mul(a.rows(k - j), b.rows(j)),
                                  outputs_per_pair(p, k - j, j));
      if (n == 0) continue;
      slice_block(p, a, k - j, b, j, out.row(k, row).data(), stride, out.id(),
                  out.offset(k) + static_cast<std::size_t>(row) * stride, blocks);
      row += n;
    }
  }
}

BlockedTable leaf_table(std::size_t K, const SplitPlan::Node& n, Index offset) {
  BlockedTable t(leaf_rows(K, n.size()));
  t.add_filled(0, 1);
  if (t.capacity() >= 1 && t.rows(1) == 1) {
    t.row(1, 0)[0] = offset + static_cast<Index>(n.begin);
    t.add_filled(1, 1);
  }
  return t;
}

class Runner {
 public:
  Runner(const EngineOptions& opts) : opts_(opts), ledger_(opts.debug_writes) {
    if (opts.workers == 0) throw PreconditionError("at least one worker is required");
  }

  Ledger& ledger() { return ledger_; }

  void run_blocks(Product p, const std::vector<Block>& blocks, bool parallel) {
    ledger_.count_tasks(blocks.size());
    parallel_for(parallel ? opts_.workers : 1, blocks.size(), [&](std::size_t i) {
      run_block(p, blocks[i]);
      ledger_.record(blocks[i].table, blocks[i].slot_begin, blocks[i].slot_end);
    });
  }

  void run_tasks(std::size_t n, const std::function<void(std::size_t)>& fn, bool parallel) {
    ledger_.count_tasks(n);
    parallel_for(parallel ? opts_.workers : 1, n, fn);
  }

  BlockedTable make(std::vector<Count> rows) {
    BlockedTable t(std::move(rows));
    ledger_.acquire(t.slot_count());
    return t;
  }

  BlockedTable make_leaf(std::size_t K, const SplitPlan::Node& n, Index offset) {
    auto t = leaf_table(K, n, offset);
    ledger_.acquire(t.slot_count());
    ledger_.record(t.id(), 0, t.slot_count());
    return t;
  }

  // The serial task roots and the remaining internal nodes grouped by
  // height, lowest first.
  static std::vector<std::vector<std::size_t>> levels(const SplitPlan& plan) {
    std::vector<std::size_t> height(plan.node_count(), 0);
    std::vector<std::vector<std::size_t>> out(1);
    if (plan.runs_sequentially(plan.root())) {
      out[0].push_back(plan.root());
      return out;
    }
    for (std::size_t id : plan.post_order()) {
      if (plan.runs_sequentially(id)) continue;
      const auto& n = plan.node(id);
      std::size_t h = 0;
      for (int c : {n.left, n.right}) {
        const auto child = static_cast<std::size_t>(c);
        if (plan.runs_sequentially(child)) {
          out[0].push_back(child);
        } else {
          h = std::max(h, height[child]);
        }
      }
      height[id] = h + 1;
      if (out.size() <= height[id]) out.resize(height[id] + 1);
      out[height[id]].push_back(id);
    }
    return out;
  }

 private:
  const EngineOptions& opts_;
  Ledger ledger_;
};

std::size_t child(const SplitPlan::Node& n, bool left) {
  return static_cast<std::size_t>(left ? n.left : n.right);
}

// Flat generators: one table per live node.
class FlatRun {
 public:
  FlatRun(Product p, std::size_t K, const SplitPlan& plan, const EngineOptions& opts)
      : p_(p), K_(K), plan_(plan), schedule_(plan_capacities(p, K, plan)), runner_(opts),
        tables_(plan.node_count()) {}

  BlockedTable run(RunStats* stats) {
    const auto lv = Runner::levels(plan_);
    runner_.run_tasks(lv[0].size(), [&](std::size_t i) { serial(lv[0][i]); }, true);
    for (std::size_t h = 1; h < lv.size(); ++h) combine(lv[h], true);
    BlockedTable root = std::move(tables_[plan_.root()]);
    runner_.ledger().inspect(root);
    runner_.ledger().report(stats);
    return root;
  }

 private:
  void serial(std::size_t id) {
    if (p_ == Product::cross_join) {
      const auto& n = plan_.node(id);
      auto t = runner_.make(schedule_.rows[id]);
      kcombs_seq_into(t, static_cast<Index>(n.begin), static_cast<Index>(n.end));
      runner_.ledger().record(t.id(), 0, t.slot_count());
      tables_[id] = std::move(t);
      return;
    }
    for (std::size_t n : plan_.post_order(id)) {
      if (plan_.node(n).is_leaf()) {
        tables_[n] = runner_.make_leaf(K_, plan_.node(n), 0);
      } else {
        combine({n}, false);
      }
    }
  }

  void combine(const std::vector<std::size_t>& ids, bool parallel) {
    std::vector<Block> blocks;
    for (std::size_t id : ids) {
      const auto& n = plan_.node(id);
      tables_[id] = runner_.make(schedule_.rows[id]);
      slice_convol(p_, tables_[child(n, true)], tables_[child(n, false)], tables_[id],
                   std::nullopt, blocks);
    }
    runner_.run_blocks(p_, blocks, parallel);
    for (std::size_t id : ids) {
      const auto& n = plan_.node(id);
      runner_.ledger().retire(tables_[child(n, true)]);
      runner_.ledger().retire(tables_[child(n, false)]);
    }
  }

  Product p_;
  std::size_t K_;
  const SplitPlan& plan_;
  CapacitySchedule schedule_;
  Runner runner_;
  std::vector<BlockedTable> tables_;
};

// K-permutations of positions offset + [0, A) along a midpoint plan, run
// serially; used for the outer layer of nested permutations.
BlockedTable kperms_serial(std::size_t K, std::size_t A, Index offset, Ledger& ledger) {
  const auto plan = SplitPlan::midpoint(A);
  const auto schedule = plan_capacities(Product::merge, K, plan);
  std::vector<BlockedTable> tables(plan.node_count());
  for (std::size_t id : plan.post_order()) {
    const auto& n = plan.node(id);
    if (n.is_leaf()) {
      tables[id] = leaf_table(K, n, offset);
      continue;
    }
    tables[id] = allocate(schedule, id);
    std::vector<Block> blocks;
    slice_convol(Product::merge, tables[child(n, true)], tables[child(n, false)], tables[id],
                 std::nullopt, blocks);
    for (const auto& b : blocks) run_block(Product::merge, b);
    for (bool left : {true, false}) {
      auto& c = tables[child(n, left)];
      ledger.inspect(c);
      c = BlockedTable();
    }
  }
  return std::move(tables[plan.root()]);
}

class NestedEngine {
 public:
  NestedEngine(Product p, std::size_t K, const InnerSizeSet& ds, const SplitPlan& plan,
               const EngineOptions& opts)
      : p_(p), K_(K), top_(ds.max()), plan_(plan), s_(plan_nested(p, K, ds, plan)),
        runner_(opts), inner_(plan.node_count()), outer_(plan.node_count()),
        combined_(plan.node_count()), generated_(plan.node_count()), atoms_(s_.atom_offsets) {}

  NestedRun run(RunStats* stats) {
    const auto lv = Runner::levels(plan_);
    runner_.run_tasks(lv[0].size(), [&](std::size_t i) { serial(lv[0][i]); }, true);
    for (std::size_t h = 1; h < lv.size(); ++h) combine(lv[h], true);
    const std::size_t r = plan_.root();
    runner_.ledger().inspect(inner_[r]);
    runner_.ledger().inspect(outer_[r]);
    runner_.ledger().report(stats);
    return {std::move(inner_[r]), std::move(atoms_), std::move(outer_[r])};
  }

 private:
  void serial(std::size_t id) {
    for (std::size_t n : plan_.post_order(id)) {
      if (plan_.node(n).is_leaf()) {
        inner_[n] = runner_.make_leaf(top_, plan_.node(n), 0);
        outer_[n] = unit();
      } else {
        combine({n}, false);
      }
    }
  }

  BlockedTable unit() {
    auto t = runner_.make(leaf_rows(K_, 0));
    t.add_filled(0, 1);
    return t;
  }

  void combine(const std::vector<std::size_t>& ids, bool parallel) {
    // Inner combinations and the atoms created at each node.
    std::vector<Block> blocks;
    for (std::size_t id : ids) {
      const auto& n = plan_.node(id);
      const auto& l = inner_[child(n, true)];
      const auto& r = inner_[child(n, false)];
      inner_[id] = runner_.make(s_.inner[id]);
      slice_convol(Product::cross_join, l, r, inner_[id], top_, blocks);
      Count cursor = s_.atom_base[id];
      for (std::size_t d : s_.ds) {
        for (std::size_t j = 1; j < d; ++j) {
          const Count rows = checked_mul(l.rows(d - j), r.rows(j));
          if (rows == 0) continue;
          if (cursor + rows > s_.atom_base[id] + s_.fresh[id]) {
            runner_.ledger().growth_event();
            throw CapacityError("node creates more atoms than planned");
          }
          const std::size_t slot = s_.atom_offsets[static_cast<std::size_t>(cursor)];
          slice_block(Product::cross_join, l, d - j, r, j, atoms_.data_at(cursor), d,
                      kAtomStoreId, slot, blocks);
          cursor += rows;
        }
      }
      if (cursor != s_.atom_base[id] + s_.fresh[id]) runner_.ledger().mark_inexact();
    }
    runner_.run_blocks(Product::cross_join, blocks, parallel);

    // Product of the children's outer families.
    blocks.clear();
    std::vector<std::size_t> active;
    for (std::size_t id : ids) {
      if (s_.fresh[id] == 0) {
        outer_[id] = unit();
        continue;
      }
      active.push_back(id);
      const auto& n = plan_.node(id);
      combined_[id] = runner_.make(s_.combined[id]);
      slice_convol(p_, outer_[child(n, true)], outer_[child(n, false)], combined_[id],
                   std::nullopt, blocks);
    }
    runner_.run_blocks(p_, blocks, parallel);

    // Outer configurations over the new atoms alone.
    for (std::size_t id : active) generated_[id] = runner_.make(s_.generated[id]);
    runner_.run_tasks(
        active.size(),
        [&](std::size_t i) {
          const std::size_t id = active[i];
          const auto base = static_cast<Index>(s_.atom_base[id]);
          const auto count = static_cast<Index>(s_.fresh[id]);
          auto& g = generated_[id];
          if (p_ == Product::cross_join) {
            kcombs_seq_into(g, base, base + count);
          } else {
            auto t = kperms_serial(K_, count, base, runner_.ledger());
            if (t.slot_count() != g.slot_count()) throw CapacityError("outer permutation shape");
            for (std::size_t k = 0; k <= K_; ++k) {
              auto src = t.elements(k);
              if (!src.empty()) std::copy(src.begin(), src.end(), g.row(k, 0).begin());
              g.add_filled(k, t.filled(k));
            }
          }
          runner_.ledger().record(g.id(), 0, g.slot_count());
        },
        parallel);

    blocks.clear();
    for (std::size_t id : active) {
      outer_[id] = runner_.make(s_.outer[id]);
      slice_convol(p_, combined_[id], generated_[id], outer_[id], std::nullopt, blocks);
    }
    runner_.run_blocks(p_, blocks, parallel);

    auto& ledger = runner_.ledger();
    for (std::size_t id : active) {
      ledger.retire(combined_[id]);
      ledger.retire(generated_[id]);
    }
    for (std::size_t id : ids) {
      const auto& n = plan_.node(id);
      for (bool left : {true, false}) {
        ledger.retire(inner_[child(n, left)]);
        ledger.retire(outer_[child(n, left)]);
      }
    }
  }

  Product p_;
  std::size_t K_;
  std::size_t top_;
  const SplitPlan& plan_;
  NestedSchedule s_;
  Runner runner_;
  std::vector<BlockedTable> inner_;
  std::vector<BlockedTable> outer_;
  std::vector<BlockedTable> combined_;
  std::vector<BlockedTable> generated_;
  AtomTable atoms_;
};

}  // namespace

BlockedTable run_kcombs(std::size_t K, const SplitPlan& plan, const EngineOptions& opts,
                        RunStats* stats) {
  return FlatRun(Product::cross_join, K, plan, opts).run(stats);
}

BlockedTable run_kperms(std::size_t K, const SplitPlan& plan, const EngineOptions& opts,
                        RunStats* stats) {
  return FlatRun(Product::merge, K, plan, opts).run(stats);
}

NestedSchedule plan_nested(Product p, std::size_t K, const InnerSizeSet& ds,
                           const SplitPlan& plan) {
  NestedSchedule s;
  s.product = p;
  s.K = K;
  s.ds.assign(ds.sizes().begin(), ds.sizes().end());
  const std::size_t top = ds.max();
  const std::size_t count = plan.node_count();
  s.inner.resize(count);
  s.fresh.assign(count, 0);
  s.atom_base.assign(count, 0);
  s.combined.resize(count);
  s.generated.resize(count);
  s.outer.resize(count);
  s.atom_offsets.assign(1, 0);
  Count atoms = 0;
  for (std::size_t id : plan.post_order()) {
    const auto& n = plan.node(id);
    s.atom_base[id] = atoms;
    if (n.is_leaf()) {
      s.inner[id] = leaf_rows(top, n.size());
      s.outer[id] = leaf_rows(K, 0);
      continue;
    }
    const auto& l = s.inner[child(n, true)];
    const auto& r = s.inner[child(n, false)];
    s.inner[id] = convol_rows(Product::cross_join, l, r);
    s.inner[id][top] = 0;
    for (std::size_t d : s.ds) {
      for (std::size_t j = 1; j < d; ++j) {
        const Count rows = checked_mul(l[d - j], r[j]);
        for (Count i = 0; i < rows; ++i) s.atom_offsets.push_back(s.atom_offsets.back() + d);
        s.fresh[id] = checked_add(s.fresh[id], rows);
      }
    }
    atoms = checked_add(atoms, s.fresh[id]);
    if (atoms > std::numeric_limits<Index>::max()) {
      throw ResourceError("nested run creates more atoms than 32-bit ids can name");
    }
    if (s.fresh[id] == 0) {
      s.outer[id] = leaf_rows(K, 0);
      continue;
    }
    s.combined[id] = convol_rows(p, s.outer[child(n, true)], s.outer[child(n, false)]);
    s.generated[id].resize(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
      s.generated[id][k] = p == Product::cross_join ? binomial(s.fresh[id], k)
                                                    : falling_factorial(s.fresh[id], k);
    }
    s.outer[id] = convol_rows(p, s.combined[id], s.generated[id]);
  }
  return s;
}

NestedRun run_nested_combs(std::size_t K, const InnerSizeSet& ds, const SplitPlan& plan,
                           const EngineOptions& opts, RunStats* stats) {
  return NestedEngine(Product::cross_join, K, ds, plan, opts).run(stats);
}

NestedRun run_nested_perms(std::size_t K, std::size_t D, const SplitPlan& plan,
                           const EngineOptions& opts, RunStats* stats) {
  require_inner_size(D);
  return NestedEngine(Product::merge, K, InnerSizeSet({D}), plan, opts).run(stats);
}

}  // namespace cgen
