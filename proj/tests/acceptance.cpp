#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cgen/cgbt.hpp"
#include "cgen/engine.hpp"
#include "cgen/generators.hpp"
#include "cgen/nested.hpp"
#include "cgen/oracle.hpp"
#include "mutations.hpp"

using namespace cgen;
using cgen::testing::iota_labels;

namespace {

// Every table built by the suite reports here.
struct AllocationTally {
  std::uint64_t runs = 0;
  std::uint64_t growth_events = 0;
  std::uint64_t inexact = 0;

  void add(const RunStats& s) {
    ++runs;
    growth_events += s.growth_events;
    if (!s.capacity_exact) ++inexact;
  }
  void add(const BlockedTable& t) {
    ++runs;
    growth_events += t.growth_events();
    if (!t.exactly_full()) ++inexact;
  }
};

AllocationTally tally;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::vector<SplitPlan> fusion_plans(std::size_t n) {
  return {SplitPlan::midpoint(n), SplitPlan::one_rest(n), SplitPlan::random(n, 0xC0FFEE)};
}

Outcome golden() {
  Outcome o;
  const std::vector<Label> xs{1, 2, 3};
  auto expect = [&](const std::string& got, const std::string& want, const char* what) {
    if (got != want) o.fail(std::string(what) + " gave " + got);
  };
  const auto plan = SplitPlan::midpoint(3, 1);
  expect(to_string(kcombs_dc<Label>(2, xs, plan)), "[[[]],[[1],[2],[3]],[[1,2],[1,3],[2,3]]]",
         "kcombs-dc");
  expect(to_string(kcombs_seq<Label>(2, xs)), "[[[]],[[1],[2],[3]],[[1,2],[1,3],[2,3]]]",
         "kcombs-seq");
  expect(to_string(kcombs_revol(2, 3)), "[[[]],[[3],[2],[1]],[[3,2],[2,1],[3,1]]]", "kcombs-revol");
  expect(to_string(kcombs_revol_int(2, 3)), "[[0],[0,1,2],[0,1,2]]", "kcombs-revol-int");
  expect(to_string(kperms_dc<Label>(2, xs, plan)),
         "[[[]],[[1],[2],[3]],[[1,2],[2,1],[1,3],[3,1],[2,3],[3,2]]]", "kperms");
  expect(to_string(nested_combs_revol_int(2, 2, 3)),
         "([[0],[0,1,2],[]],[[[]],[[1],[2],[0]],[[1,2],[1,0],[2,0]]])", "nested-revol-int");
  expect(to_string(set_empty(2, std::vector<std::vector<int>>{{1}, {2}, {3}, {4}})),
         "[[1],[2],[],[4]]", "set_empty");
  expect(to_string(rev_inits<int>(std::vector<int>{1, 2, 3})), "[[],[1],[2,1],[3,2,1]]",
         "rev_inits");
  // The engine reproduces the same buckets on the same plan.
  RunStats s;
  expect(to_string(run_kcombs(2, plan, {1, true}, &s).to_family(xs)),
         "[[[]],[[1],[2],[3]],[[1,2],[1,3],[2,3]]]", "engine kcombs-dc");
  tally.add(s);
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  for (std::size_t N = 0; N <= 12; ++N) {
    const auto xs = iota_labels(N);
    for (std::size_t K = 0; K <= std::min<std::size_t>(N, 6); ++K) {
      const auto want = brute_combs(N, K);
      auto check = [&](const SizedFamily<Label>& f, const char* what) {
        const auto r = compare_multisets(what, {}, f, want, Order::unordered);
        if (!r.pass) o.fail(r.to_json_line());
      };
      check(kcombs_dc<Label>(K, xs), "kcombs-dc");
      check(kcombs_seq<Label>(K, xs), "kcombs-seq");
      check(kcombs_revol(K, N), "kcombs-revol");
      for (const auto& plan : {SplitPlan::midpoint(N, 2), SplitPlan::random(N, N * 31 + K, 1)}) {
        RunStats s;
        check(run_kcombs(K, plan, {2, true}, &s).to_family(xs), "engine kcombs-dc");
        tally.add(s);
      }
      const auto seq = kcombs_seq_blocked(K, N);
      const auto rev = kcombs_revol_blocked(K, N);
      tally.add(seq);
      tally.add(rev);
      check(seq.to_family(xs), "blocked kcombs-seq");
      check(rev.to_family(xs), "blocked kcombs-revol");
    }
  }
  for (std::size_t N = 0; N <= 8; ++N) {
    const auto xs = iota_labels(N);
    for (std::size_t K = 0; K <= 4; ++K) {
      const auto want = brute_perms(N, K);
      auto r = compare_multisets("kperms", {}, kperms_dc<Label>(K, xs), want, Order::ordered);
      if (!r.pass) o.fail(r.to_json_line());
      RunStats s;
      r = compare_multisets("engine kperms", {},
                            run_kperms(K, SplitPlan::midpoint(N, 2), {2, true}, &s).to_family(xs),
                            want, Order::ordered);
      tally.add(s);
      if (!r.pass) o.fail(r.to_json_line());
    }
  }
  return o;
}

Outcome revolving_door() {
  Outcome o;
  for (std::size_t N = 0; N <= 16; ++N) {
    for (std::size_t K = 0; K <= std::min<std::size_t>(N, 8); ++K) {
      const auto r = check_revolving_door(kcombs_revol(K, N));
      if (!r.pass) o.fail(r.to_json_line());
    }
  }
  return o;
}

Outcome rank_consistency() {
  Outcome o;
  for (std::size_t N = 0; N <= 16; ++N) {
    for (std::size_t K = 0; K <= std::min<std::size_t>(N, 8); ++K) {
      const auto r = check_rank_consistency(K, N);
      if (!r.pass) o.fail(r.to_json_line());
    }
  }
  return o;
}

Outcome fusion() {
  Outcome o;
  std::size_t checks = 0;
  for (std::size_t n = 0; n <= 8; ++n) {
    const auto xs = iota_labels(n);
    for (const auto& plan : fusion_plans(n)) {
      for (std::size_t K = 0; K <= 3; ++K) {
        for (std::size_t D = 2; D <= 3; ++D) {
          for (auto v : {FusionVariant::dc, FusionVariant::seq, FusionVariant::revol,
                         FusionVariant::perms}) {
            const auto r = check_fusion(v, K, InnerSizeSet({D}), xs, plan);
            ++checks;
            if (!r.pass) o.fail(r.to_json_line());
          }
        }
        const auto r = check_fusion(FusionVariant::multi, K, InnerSizeSet({2, 3}), xs, plan);
        ++checks;
        if (!r.pass) o.fail(r.to_json_line());
        // The nested engine gives the same buckets as the pure layer.
        RunStats s;
        const auto e = run_nested_combs(K, InnerSizeSet({2}), plan, {2, true}, &s).to_result(xs);
        tally.add(s);
        if (e != nested_combs_dc<Label>(K, 2, xs, plan)) o.fail("nested engine differs, n=" + std::to_string(n));
        const auto m = run_nested_combs(K, InnerSizeSet({2, 3}), plan, {2, true}, &s).to_result(xs);
        tally.add(s);
        if (m != nested_combs_multi<Label>(K, InnerSizeSet({2, 3}), xs, plan)) {
          o.fail("nested multi engine differs, n=" + std::to_string(n));
        }
      }
    }
  }
  o.detail = o.pass ? std::to_string(checks) + " checks" : o.detail;
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto plan = SplitPlan::midpoint(24, 4);
  std::string reference;
  std::uint64_t checksum = 0;
  for (std::size_t w : {1, 2, 4, 8}) {
    RunStats s;
    const auto bytes = to_cgbt(run_kcombs(4, plan, {w, true}, &s), 24);
    tally.add(s);
    if (s.overlapping_writes != 0) o.fail("overlapping writes with " + std::to_string(w) + " workers");
    if (w == 1) {
      reference = bytes;
      checksum = fnv1a(bytes);
    } else if (bytes != reference || fnv1a(bytes) != checksum) {
      o.fail("dump with " + std::to_string(w) + " workers differs");
    }
  }
  // Nested output is also independent of the worker count.
  const auto nplan = SplitPlan::midpoint(10, 2);
  const auto nref = run_nested_combs(3, InnerSizeSet({2}), nplan, {1, false}, nullptr).to_result(iota_labels(10));
  for (std::size_t w : {2, 4, 8}) {
    RunStats s;
    if (run_nested_combs(3, InnerSizeSet({2}), nplan, {w, true}, &s).to_result(iota_labels(10)) != nref) {
      o.fail("nested run with " + std::to_string(w) + " workers differs");
    }
    tally.add(s);
  }
  if (o.pass) {
    std::ostringstream d;
    d << "checksum 0x" << std::hex << checksum;
    o.detail = d.str();
  }
  return o;
}

Outcome amortized() {
  Outcome o;
  std::vector<double> per;
  std::ostringstream d;
  for (std::size_t N : {20, 25, 30}) {
    const auto plan = SplitPlan::midpoint(N);
    Count configs = 0;
    for (std::size_t k = 0; k <= 3; ++k) configs += binomial(N, k);
    // Repeat enough to make each sample at least a few milliseconds.
    const int reps = static_cast<int>(std::max<Count>(1, 2'000'000 / configs));
    double best = std::numeric_limits<double>::max();
    for (int trial = 0; trial < 7; ++trial) {
      const auto start = std::chrono::steady_clock::now();
      for (int r = 0; r < reps; ++r) {
        RunStats s;
        const auto t = run_kcombs(3, plan, {1, false}, &s);
        if (t.rows(3) != binomial(N, 3)) o.fail("wrong size");
        if (r == 0 && trial == 0) tally.add(s);
      }
      const std::chrono::duration<double, std::nano> took = std::chrono::steady_clock::now() - start;
      best = std::min(best, took.count() / (static_cast<double>(reps) * static_cast<double>(configs)));
    }
    per.push_back(best);
    d << "N=" << N << ": " << best << " ns/config; ";
  }
  const auto [lo, hi] = std::minmax_element(per.begin(), per.end());
  const double band = *hi / *lo;
  d << "band " << band << "x";
  if (band > 3.0) o.fail(d.str());
  o.detail = d.str();
  return o;
}

Outcome mutation_soundness() {
  Outcome o;
  std::ostringstream d;
  for (const auto& s : {testing::mutate_oracle(0xC0FFEE), testing::mutate_revolving_door(0xC0FFEE),
                        testing::mutate_rank(0xC0FFEE), testing::mutate_fusion(0xC0FFEE)}) {
    d << (d.tellp() > 0 ? "; " : "") << s.checker << ' ' << s.rejected << '/' << s.trials;
    if (s.rejected != s.trials) o.pass = false;
  }
  o.detail = d.str();
  return o;
}

Outcome preallocation() {
  Outcome o;
  std::ostringstream d;
  d << tally.runs << " runs, " << tally.growth_events << " growth events, " << tally.inexact
    << " inexact fills";
  if (tally.runs == 0 || tally.growth_events != 0 || tally.inexact != 0) o.pass = false;
  o.detail = d.str();
  return o;
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  // Preallocation is last so it sees every table built by the others.
  const std::vector<Criterion> criteria = {
      {"golden-outputs", 1, golden},
      {"oracle-equivalence", 30, oracle_equivalence},
      {"revolving-door", 30, revolving_door},
      {"rank-consistency", 30, rank_consistency},
      {"fusion-equivalence", 60, fusion},
      {"parallel-determinism", 30, determinism},
      {"amortized-constant", 0, amortized},
      {"mutation-soundness", 0, mutation_soundness},
      {"preallocation-exactness", 0, preallocation},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    if (c.budget_s > 0 && took.count() > c.budget_s) {
      o.fail("took " + std::to_string(took.count()) + " s, budget " + std::to_string(c.budget_s) + " s");
    }
    all = all && o.pass;
    std::printf("%s %s (%.3f s) %s\n", o.pass ? "PASS" : "FAIL", c.name, took.count(),
                o.detail.c_str());
  }
  std::fflush(stdout);
  return all ? 0 : 1;
}
