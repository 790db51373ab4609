#include "cgen/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cgen/binomial.hpp"
#include "cgen/cgbt.hpp"
#include "cgen/engine.hpp"
#include "cgen/errors.hpp"
#include "cgen/generators.hpp"
#include "cgen/ground_set.hpp"
#include "cgen/nested.hpp"
#include "cgen/oracle.hpp"
#include "cgen/split_plan.hpp"

namespace cgen::cli {

namespace {

const std::vector<std::string> kGenerators = {
    "kcombs-dc", "kcombs-seq", "kcombs-revol", "kcombs-revol-int", "kperms", "nccg-dc",
    "nccg-seq",  "nccg-revol", "nccg-int",     "nccg-multi",       "npcg"};

const std::vector<std::string> kProperties = {"revolving-door", "rank-consistency", "fusion",
                                              "oracle", "determinism", "preallocation"};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_revol(const std::string& g) {
  return g == "kcombs-revol" || g == "kcombs-revol-int" || g == "nccg-revol" || g == "nccg-int";
}
bool is_nested(const std::string& g) { return g.rfind("nccg", 0) == 0 || g == "npcg"; }
bool is_flat_table(const std::string& g) {
  return g == "kcombs-dc" || g == "kcombs-seq" || g == "kcombs-revol" || g == "kperms";
}

struct Params {
  std::string generator;
  std::optional<std::size_t> k;
  std::optional<std::size_t> d;
  std::string ds;
  std::optional<std::size_t> n;
  std::string elems;
  std::string split = "midpoint";
  std::optional<std::size_t> threshold;
  std::size_t workers = 1;
  std::string format = "text";
  std::string output;

  std::size_t K() const {
    if (!k) throw UsageError("--k is required");
    return *k;
  }

  GroundSet ground() const {
    if (is_revol(generator) && !elems.empty()) {
      throw UsageError(generator + " takes --n only; its ground list is fixed to N..1");
    }
    if (!elems.empty() && n) throw UsageError("give either --elems or --n, not both");
    if (!elems.empty()) return GroundSet::parse(elems);
    if (!n) throw UsageError("--n or --elems is required");
    return GroundSet::iota(*n);
  }

  std::size_t D() const {
    if (!d) throw UsageError("--d is required for " + generator);
    require_inner_size(*d);
    return *d;
  }

  InnerSizeSet sizes() const {
    if (generator == "nccg-multi") {
      if (ds.empty()) throw UsageError("--ds is required for nccg-multi");
      return InnerSizeSet::parse(ds);
    }
    return InnerSizeSet({D()});
  }

  SplitPlan plan(std::size_t N) const {
    std::size_t thr = threshold.value_or(SplitPlan::kDefaultThreshold);
    if (split == "midpoint") return SplitPlan::midpoint(N, thr);
    if (split == "one-rest") return SplitPlan::one_rest(N, thr);
    if (split.rfind("random=", 0) == 0) {
      return SplitPlan::random(N, std::stoull(split.substr(7), nullptr, 0), thr);
    }
    if (split.rfind("threshold=", 0) == 0) {
      if (!threshold) thr = std::stoull(split.substr(10));
      return SplitPlan::midpoint(N, thr);
    }
    if (!split.empty() && split.front() == '(') {
      auto p = SplitPlan::parse(split, thr);
      if (p.ground_size() != N) {
        throw UsageError("split tree covers " + std::to_string(p.ground_size()) +
                         " positions, ground set has " + std::to_string(N));
      }
      return p;
    }
    throw UsageError("unknown split '" + split + "'");
  }

  EngineOptions engine() const {
    if (workers == 0) throw UsageError("--workers must be at least 1");
    return {workers, false};
  }
};

void add_common(CLI::App* cmd, Params& p) {
  cmd->add_option("--k", p.k, "Largest outer configuration size K");
  cmd->add_option("--d", p.d, "Inner combination size D (nested generators)");
  cmd->add_option("--ds", p.ds, "Comma-separated inner sizes (nccg-multi)");
  cmd->add_option("--n", p.n, "Ground set 1..N");
  cmd->add_option("--elems", p.elems, "Comma-separated ground set values");
  cmd->add_option("--split", p.split,
                  "midpoint | one-rest | random=SEED | threshold=T | tree such as (1,(1,1))");
  cmd->add_option("--threshold", p.threshold, "Subtree size run as one serial task (default 64)");
  cmd->add_option("--workers", p.workers, "Worker threads");
}

// Rendering ------------------------------------------------------------

template <class T>
void write_config(std::ostream& os, const Config<T>& c) {
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
}

void write_config(std::ostream& os, const Config<Config<Label>>& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    os << (i ? "," : "") << '[';
    write_config(os, c[i]);
    os << ']';
  }
}

void write_config(std::ostream& os, RankFamily::Rank r) { os << r; }

template <class Fam>
void write_text(std::ostream& os, const Fam& f) {
  for (std::size_t k = 0; k <= f.capacity(); ++k) {
    os << "k=" << k << '\n';
    for (const auto& c : f[k]) {
      write_config(os, c);
      os << '\n';
    }
  }
}

template <class T>
void write_csv_fields(std::ostream& os, const Config<T>& c) {
  for (const T& x : c) os << ',' << x;
}

void write_csv_fields(std::ostream& os, const Config<Config<Label>>& c) {
  for (const auto& a : c) {
    os << ",\"[";
    write_config(os, a);
    os << "]\"";
  }
}

void write_csv_fields(std::ostream& os, RankFamily::Rank r) { os << ',' << r; }

template <class Fam>
void write_csv(std::ostream& os, const Fam& f, const std::string& part = "") {
  for (std::size_t k = 0; k <= f.capacity(); ++k) {
    for (std::size_t i = 0; i < f[k].size(); ++i) {
      if (!part.empty()) os << part << ',';
      os << k << ',' << i;
      write_csv_fields(os, f[k][i]);
      os << '\n';
    }
  }
}

template <class Inner, class Outer>
void write_nested(std::ostream& os, const Inner& inner, const Outer& outer,
                  const std::string& format) {
  if (format == "csv") {
    write_csv(os, inner, "inner");
    write_csv(os, outer, "outer");
    return;
  }
  os << "inner\n";
  write_text(os, inner);
  os << "outer\n";
  write_text(os, outer);
}

void write_flat(std::ostream& os, const SizedFamily<Label>& f, const std::string& format) {
  if (format == "csv") {
    write_csv(os, f);
  } else {
    write_text(os, f);
  }
}

SizedFamily<Label> dump_family(const CgbtDump& d, std::span<const Label> labels) {
  SizedFamily<Label> f(static_cast<std::size_t>(d.K));
  for (std::size_t k = 0; k <= d.K; ++k) {
    for (std::uint64_t r = 0; r < d.rows[k]; ++r) {
      Config<Label> c;
      for (std::size_t t = 0; t < k; ++t) {
        const auto e = d.elements[k][r * k + t];
        if (e >= labels.size()) throw PreconditionError("cgbt element outside the label map");
        c.push_back(labels[e]);
      }
      f[k].push_back(std::move(c));
    }
  }
  return f;
}

// Generation -----------------------------------------------------------

// Runs a flat generator that produces a blocked table.
BlockedTable flat_table(const Params& p, std::size_t K, std::size_t N, RunStats* stats) {
  const auto& g = p.generator;
  if (g == "kcombs-dc") return run_kcombs(K, p.plan(N), p.engine(), stats);
  if (g == "kperms") return run_kperms(K, p.plan(N), p.engine(), stats);
  BlockedTable t = g == "kcombs-seq" ? kcombs_seq_blocked(K, N) : kcombs_revol_blocked(K, N);
  if (stats) {
    stats->growth_events = t.growth_events();
    stats->capacity_exact = t.exactly_full();
  }
  return t;
}

NestedRun nested_engine(const Params& p, std::size_t K, std::size_t N, RunStats* stats) {
  if (p.generator == "npcg") return run_nested_perms(K, p.D(), p.plan(N), p.engine(), stats);
  return run_nested_combs(K, p.sizes(), p.plan(N), p.engine(), stats);
}

std::ostream& open_output(const Params& p, std::ostream& out, std::unique_ptr<std::ofstream>& f) {
  if (p.output.empty() || p.output == "-") return out;
  f = std::make_unique<std::ofstream>(p.output, std::ios::binary);
  if (!*f) throw ResourceError("cannot open " + p.output + " for writing");
  return *f;
}

int cmd_gen(const Params& p, std::ostream& out) {
  const auto& g = p.generator;
  const std::size_t K = p.K();
  const GroundSet gs = p.ground();
  const std::size_t N = gs.size();
  if (p.format == "cgbt" && !is_flat_table(g)) {
    throw UsageError("--format cgbt is available for kcombs-dc, kcombs-seq, kcombs-revol and kperms");
  }
  // Validate generator-specific parameters before any output is produced.
  if (is_nested(g)) (void)p.sizes();
  std::unique_ptr<std::ofstream> file;
  std::ostream& os = open_output(p, out, file);

  if (is_flat_table(g)) {
    const auto table = flat_table(p, K, N, nullptr);
    if (p.format == "cgbt") {
      write_cgbt(os, table, N);
    } else {
      write_flat(os, table.to_family(gs.labels()), p.format);
    }
  } else if (g == "kcombs-revol-int") {
    const auto ranks = kcombs_revol_int(K, N);
    if (p.format == "csv") {
      write_csv(os, ranks);
    } else {
      write_text(os, ranks);
    }
  } else if (g == "nccg-dc" || g == "nccg-multi" || g == "npcg") {
    const auto r = nested_engine(p, K, N, nullptr).to_result(gs.labels());
    write_nested(os, r.inner, r.outer, p.format);
  } else if (g == "nccg-seq") {
    const auto r = nested_combs_seq(K, p.D(), gs.labels());
    write_nested(os, r.inner, r.outer, p.format);
  } else if (g == "nccg-revol") {
    const auto r = nested_combs_revol(K, p.D(), N);
    write_nested(os, r.inner, r.outer, p.format);
  } else if (g == "nccg-int") {
    const auto r = nested_combs_revol_int(K, p.D(), N);
    write_nested(os, r.inner, r.outer, p.format);
  }
  os.flush();
  return kOk;
}

// Counting -------------------------------------------------------------

std::string join_counts(const std::vector<Count>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

struct Counts {
  std::vector<Count> inner;
  std::vector<Count> outer;
};

Counts arithmetic_counts(const Params& p, std::size_t K, std::size_t N) {
  const auto& g = p.generator;
  Counts c;
  if (!is_nested(g)) {
    for (std::size_t k = 0; k <= K; ++k) {
      c.outer.push_back(g == "kperms" ? falling_factorial(N, k) : binomial(N, k));
    }
    return c;
  }
  const auto ds = p.sizes();
  Count atoms = 0;
  for (std::size_t d = 0; d <= ds.max(); ++d) c.inner.push_back(d == ds.max() ? 0 : binomial(N, d));
  for (std::size_t d : ds.sizes()) atoms = checked_add(atoms, binomial(N, d));
  for (std::size_t k = 0; k <= K; ++k) {
    c.outer.push_back(g == "npcg" ? falling_factorial(atoms, k) : binomial(atoms, k));
  }
  return c;
}

template <class Fam>
std::vector<Count> sizes_of(const Fam& f) {
  std::vector<Count> s;
  for (std::size_t k = 0; k <= f.capacity(); ++k) s.push_back(f[k].size());
  return s;
}

Counts enumerated_counts(const Params& p, std::size_t K, const GroundSet& gs) {
  const auto& g = p.generator;
  const std::size_t N = gs.size();
  Counts c;
  if (is_flat_table(g)) {
    const auto t = flat_table(p, K, N, nullptr);
    for (std::size_t k = 0; k <= K; ++k) c.outer.push_back(t.rows(k));
  } else if (g == "kcombs-revol-int") {
    c.outer = sizes_of(kcombs_revol_int(K, N));
  } else if (g == "nccg-dc" || g == "nccg-multi" || g == "npcg") {
    const auto r = nested_engine(p, K, N, nullptr);
    for (std::size_t k = 0; k <= r.inner.capacity(); ++k) c.inner.push_back(r.inner.rows(k));
    for (std::size_t k = 0; k <= K; ++k) c.outer.push_back(r.outer.rows(k));
  } else if (g == "nccg-seq") {
    const auto r = nested_combs_seq(K, p.D(), gs.labels());
    c = {sizes_of(r.inner), sizes_of(r.outer)};
  } else if (g == "nccg-revol") {
    const auto r = nested_combs_revol(K, p.D(), N);
    c = {sizes_of(r.inner), sizes_of(r.outer)};
  } else {
    const auto r = nested_combs_revol_int(K, p.D(), N);
    c = {sizes_of(r.inner), sizes_of(r.outer)};
  }
  return c;
}

int cmd_count(const Params& p, bool check, std::ostream& out) {
  const std::size_t K = p.K();
  const GroundSet gs = p.ground();
  const auto c = arithmetic_counts(p, K, gs.size());
  if (is_nested(p.generator)) {
    out << "inner " << join_counts(c.inner) << '\n' << "outer " << join_counts(c.outer) << '\n';
  } else {
    out << join_counts(c.outer) << '\n';
  }
  if (!check) return kOk;
  const auto e = enumerated_counts(p, K, gs);
  const bool same = e.outer == c.outer && e.inner == c.inner;
  out << (same ? "check pass" : "check FAIL: enumerated " + join_counts(e.outer)) << '\n';
  return same ? kOk : kPropertyFailed;
}

// Verification ---------------------------------------------------------

using ParamList = std::vector<std::pair<std::string, std::string>>;

std::vector<PropertyReport> verify_reports(const std::string& property, Params p, bool sweep) {
  std::vector<PropertyReport> out;
  const std::size_t K = p.K();
  if (property == "rank-consistency") {
    if (!p.n) throw UsageError("rank-consistency takes --n");
    for (std::size_t n = sweep ? 0 : *p.n; n <= *p.n; ++n) {
      for (std::size_t k = sweep ? 0 : K; k <= K; ++k) out.push_back(check_rank_consistency(k, n));
    }
    return out;
  }
  if (property == "revolving-door") {
    if (p.generator.empty()) p.generator = "kcombs-revol";
    if (!is_flat_table(p.generator)) throw UsageError("revolving-door checks a flat generator");
    const GroundSet gs = p.ground();
    for (std::size_t n = sweep ? 0 : gs.size(); n <= gs.size(); ++n) {
      for (std::size_t k = sweep ? 0 : K; k <= K; ++k) {
        const auto labels = gs.labels().subspan(0, n);
        const auto t = flat_table(p, k, n, nullptr);
        out.push_back(check_revolving_door(
            t.to_family(labels),
            {{"gen", p.generator}, {"k", std::to_string(k)}, {"n", std::to_string(n)}}));
      }
    }
    return out;
  }
  if (property == "oracle") {
    if (p.generator.empty()) p.generator = "kcombs-dc";
    if (!is_flat_table(p.generator)) throw UsageError("oracle compares a flat generator");
    if (!p.n) throw UsageError("oracle takes --n");
    for (std::size_t n = sweep ? 0 : *p.n; n <= *p.n; ++n) {
      for (std::size_t k = sweep ? 0 : K; k <= K; ++k) {
        const auto labels = GroundSet::iota(n);
        const auto t = flat_table(p, k, n, nullptr).to_family(labels.labels());
        const bool perms = p.generator == "kperms";
        out.push_back(compare_multisets(
            "oracle", {{"gen", p.generator}, {"k", std::to_string(k)}, {"n", std::to_string(n)}},
            t, perms ? brute_perms(n, k) : brute_combs(n, k),
            perms ? Order::ordered : Order::unordered));
      }
    }
    return out;
  }
  if (property == "fusion") {
    if (p.generator.empty()) p.generator = "nccg-dc";
    static const std::vector<std::pair<std::string, FusionVariant>> variants = {
        {"nccg-dc", FusionVariant::dc},       {"nccg-seq", FusionVariant::seq},
        {"nccg-revol", FusionVariant::revol}, {"nccg-multi", FusionVariant::multi},
        {"npcg", FusionVariant::perms}};
    auto it = std::find_if(variants.begin(), variants.end(),
                           [&](const auto& v) { return v.first == p.generator; });
    if (it == variants.end()) throw UsageError("fusion checks a nested generator");
    const GroundSet gs = p.ground();
    const auto ds = p.sizes();
    for (std::size_t n = sweep ? 0 : gs.size(); n <= gs.size(); ++n) {
      for (std::size_t k = sweep ? 0 : K; k <= K; ++k) {
        const auto labels = gs.labels().subspan(0, n);
        out.push_back(check_fusion(it->second, k, ds, labels, p.plan(n)));
      }
    }
    return out;
  }
  // determinism and preallocation run the parallel engine.
  if (p.generator.empty()) p.generator = "kcombs-dc";
  const auto& g = p.generator;
  if (g != "kcombs-dc" && g != "kperms" && g != "nccg-dc" && g != "nccg-multi" && g != "npcg") {
    throw UsageError(property + " checks an engine generator");
  }
  const GroundSet gs = p.ground();
  const std::size_t N = gs.size();
  ParamList params{{"gen", g}, {"k", std::to_string(K)}, {"n", std::to_string(N)},
                   {"workers", std::to_string(p.workers)}};
  auto run_once = [&](std::size_t workers, RunStats* stats) {
    Params q = p;
    q.workers = workers;
    EngineOptions opts = q.engine();
    opts.debug_writes = stats != nullptr;
    if (!is_nested(g)) {
      const auto t = g == "kperms" ? run_kperms(K, q.plan(N), opts, stats)
                                   : run_kcombs(K, q.plan(N), opts, stats);
      return to_cgbt(t, N);
    }
    const auto r = g == "npcg" ? run_nested_perms(K, q.D(), q.plan(N), opts, stats)
                               : run_nested_combs(K, q.sizes(), q.plan(N), opts, stats);
    std::string bytes = to_cgbt(r.inner, N) + to_cgbt(r.outer, r.atoms.size());
    for (std::size_t i = 0; i < r.atoms.size(); ++i) {
      for (Index e : r.atoms.atom(i)) bytes += std::to_string(e) + ',';
      bytes += ';';
    }
    return bytes;
  };
  if (property == "determinism") {
    const auto reference = run_once(1, nullptr);
    PropertyReport r{"determinism", params, true, std::nullopt};
    for (std::size_t w : {std::size_t{2}, std::size_t{4}, std::size_t{8}, p.workers}) {
      const auto bytes = run_once(w, nullptr);
      if (bytes == reference) continue;
      r.pass = false;
      std::ostringstream a, b;
      a << std::hex << fnv1a(reference);
      b << std::hex << fnv1a(bytes);
      r.counterexample = Counterexample{0, a.str(), b.str(), "",
                                        "checksum with 1 worker vs " + std::to_string(w)};
      break;
    }
    out.push_back(r);
    return out;
  }
  RunStats stats;
  run_once(p.workers, &stats);
  PropertyReport r{"preallocation", params, true, std::nullopt};
  if (stats.growth_events != 0 || !stats.capacity_exact || stats.overlapping_writes != 0) {
    r.pass = false;
    r.counterexample = Counterexample{
        0, "", "", "",
        "growth events " + std::to_string(stats.growth_events) + ", exact fill " +
            (stats.capacity_exact ? "yes" : "no") + ", overlapping writes " +
            std::to_string(stats.overlapping_writes)};
  }
  out.push_back(r);
  return out;
}

int cmd_verify(const std::string& property, const Params& p, bool sweep, std::ostream& out) {
  const auto reports = verify_reports(property, p, sweep);
  bool all = true;
  for (const auto& r : reports) {
    out << r.to_json_line() << '\n';
    all = all && r.pass;
  }
  return all ? kOk : kPropertyFailed;
}

// Benchmark ------------------------------------------------------------

std::vector<std::size_t> parse_list(const std::string& s, const char* what) {
  std::vector<std::size_t> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError(std::string("bad ") + what + " list '" + s + "'");
    }
  }
  if (v.empty()) throw UsageError(std::string("empty ") + what + " list");
  return v;
}

int cmd_bench(Params p, const std::string& ns, const std::string& workers, std::size_t trials,
              std::ostream& out) {
  const auto& g = p.generator;
  if (!is_flat_table(g) && g != "nccg-dc" && g != "nccg-multi" && g != "npcg") {
    throw UsageError("bench runs table generators: kcombs-dc, kcombs-seq, kcombs-revol, kperms, "
                     "nccg-dc, nccg-multi, npcg");
  }
  if (trials == 0) throw UsageError("--trials must be at least 1");
  const std::size_t K = p.K();
  const auto n_list = ns.empty() ? std::vector<std::size_t>{p.n.value_or(0)} : parse_list(ns, "N");
  const auto w_list = workers.empty() ? std::vector<std::size_t>{p.workers}
                                      : parse_list(workers, "workers");
  out << "gen,K,N,workers,configs,wall_ns,ns_per_config,growth_events,peak_slots,checksum\n";
  bool clean = true;
  for (std::size_t N : n_list) {
    for (std::size_t w : w_list) {
      p.workers = w;
      if (is_nested(g)) (void)p.sizes();
      std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
      std::uint64_t configs = 0;
      RunStats stats;
      std::string bytes;
      for (std::size_t t = 0; t < trials; ++t) {
        RunStats s;
        const auto start = std::chrono::steady_clock::now();
        if (is_nested(g)) {
          auto r = nested_engine(p, K, N, &s);
          const auto ns_taken = std::chrono::duration_cast<std::chrono::nanoseconds>(
              std::chrono::steady_clock::now() - start);
          best = std::min<std::uint64_t>(best, ns_taken.count());
          configs = 0;
          for (std::size_t k = 0; k <= K; ++k) configs += r.outer.rows(k);
          bytes = to_cgbt(r.inner, N) + to_cgbt(r.outer, r.atoms.size());
        } else {
          auto table = flat_table(p, K, N, &s);
          const auto ns_taken = std::chrono::duration_cast<std::chrono::nanoseconds>(
              std::chrono::steady_clock::now() - start);
          best = std::min<std::uint64_t>(best, ns_taken.count());
          configs = 0;
          for (std::size_t k = 0; k <= K; ++k) configs += table.rows(k);
          bytes = to_cgbt(table, N);
        }
        stats.growth_events += s.growth_events;
        stats.peak_slots = std::max(stats.peak_slots, s.peak_slots);
      }
      clean = clean && stats.growth_events == 0;
      out << g << ',' << K << ',' << N << ',' << w << ',' << configs << ',' << best << ','
          << static_cast<double>(best) / static_cast<double>(std::max<std::uint64_t>(configs, 1))
          << ',' << stats.growth_events << ',' << stats.peak_slots << ",0x" << std::hex
          << fnv1a(bytes) << std::dec << '\n';
    }
  }
  return clean ? kOk : kPropertyFailed;
}

int cmd_dump(const std::string& path, const Params& p, std::ostream& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ResourceError("cannot open " + path);
  const auto d = read_cgbt(f);
  const GroundSet gs =
      p.elems.empty() ? GroundSet::iota(static_cast<std::size_t>(d.N)) : GroundSet::parse(p.elems);
  if (gs.size() != d.N) {
    throw UsageError("label map has " + std::to_string(gs.size()) + " values, dump has N = " +
                     std::to_string(d.N));
  }
  write_flat(out, dump_family(d, gs.labels()), p.format);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combination and permutation generators over blocked tables"};
  app.require_subcommand(1);
  Params p;

  auto* gen = app.add_subcommand("gen", "Generate a family");
  gen->add_option("generator", p.generator, "Generator")->required()->check(CLI::IsMember(kGenerators));
  add_common(gen, p);
  gen->add_option("--format", p.format,
                  "text: k=<k> header then one config per line; "
                  "csv: k,position,elements... (nested rows start with inner/outer); "
                  "cgbt: binary table")
      ->check(CLI::IsMember({"text", "csv", "cgbt"}));
  gen->add_option("-o,--output", p.output, "Output file (default stdout)");

  bool check = false;
  auto* count = app.add_subcommand("count", "Bucket sizes computed arithmetically");
  count->add_option("generator", p.generator, "Generator")->required()->check(CLI::IsMember(kGenerators));
  add_common(count, p);
  count->add_flag("--check", check, "Cross-check against an actual run");

  std::string property;
  bool sweep = false;
  auto* verify = app.add_subcommand("verify", "Run property checks, one JSON record per line");
  verify->add_option("property", property, "Property")->required()->check(CLI::IsMember(kProperties));
  verify->add_option("--gen", p.generator, "Generator under test")->check(CLI::IsMember(kGenerators));
  add_common(verify, p);
  verify->add_flag("--sweep", sweep, "Also check every smaller k and n");

  std::string ns, workers;
  std::size_t trials = 5;
  auto* bench = app.add_subcommand(
      "bench", "Timing report as csv: gen,K,N,workers,configs,wall_ns,ns_per_config,"
               "growth_events,peak_slots,checksum (wall_ns is the fastest trial)");
  bench->add_option("generator", p.generator, "Generator")->required()->check(CLI::IsMember(kGenerators));
  add_common(bench, p);
  bench->add_option("--ns", ns, "Comma-separated N values");
  bench->add_option("--workers-list", workers, "Comma-separated worker counts");
  bench->add_option("--trials", trials, "Repetitions per row");

  std::string path;
  auto* dump = app.add_subcommand("dump", "Render a cgbt file as text or csv");
  dump->add_option("file", path, "cgbt file")->required();
  dump->add_option("--elems", p.elems, "Label map (default 1..N)");
  dump->add_option("--format", p.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(p, out);
    if (count->parsed()) return cmd_count(p, check, out);
    if (verify->parsed()) return cmd_verify(property, p, sweep, out);
    if (bench->parsed()) return cmd_bench(p, ns, workers, trials, out);
    if (dump->parsed()) return cmd_dump(path, p, out);
  } catch (const OverflowError& e) {
    err << e.what() << '\n';
    return kOverflow;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kOverflow;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kOverflow;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace cgen::cli
