#include "cgen/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

#include <json.hpp>

#include "cgen/binomial.hpp"
#include "cgen/errors.hpp"
#include "cgen/generators.hpp"

namespace cgen {

SizedFamily<Label> brute_combs(std::size_t N, std::size_t K) {
  if (N > kBruteCombsMaxN) {
    throw PreconditionError("brute_combs refuses N = " + std::to_string(N) + " (limit " +
                            std::to_string(kBruteCombsMaxN) + ")");
  }
  SizedFamily<Label> f(K);
  const std::uint64_t subsets = std::uint64_t{1} << N;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    const auto k = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (k > K) continue;
    Config<Label> c;
    for (std::size_t i = 0; i < N; ++i) {
      if (mask >> i & 1) c.push_back(static_cast<Label>(i + 1));
    }
    f[k].push_back(std::move(c));
  }
  return f;
}

namespace {

void select(std::size_t N, std::size_t K, std::vector<bool>& used, Config<Label>& prefix,
            SizedFamily<Label>& out) {
  out[prefix.size()].push_back(prefix);
  if (prefix.size() == K) return;
  for (std::size_t i = 0; i < N; ++i) {
    if (used[i]) continue;
    used[i] = true;
    prefix.push_back(static_cast<Label>(i + 1));
    select(N, K, used, prefix, out);
    prefix.pop_back();
    used[i] = false;
  }
}

nlohmann::json param_value(const std::string& v) {
  if (!v.empty() && v.size() < 19 &&
      std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c) != 0; })) {
    return std::stoull(v);
  }
  return v;
}

}  // namespace

SizedFamily<Label> brute_perms(std::size_t N, std::size_t K) {
  if (N > kBrutePermsMaxN) {
    throw PreconditionError("brute_perms refuses N = " + std::to_string(N) + " (limit " +
                            std::to_string(kBrutePermsMaxN) + ")");
  }
  SizedFamily<Label> f(K);
  std::vector<bool> used(N, false);
  Config<Label> prefix;
  select(N, K, used, prefix, f);
  return f;
}

std::string PropertyReport::to_json_line() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) j["params"][k] = param_value(v);
  j["pass"] = pass;
  if (counterexample) {
    const auto& c = *counterexample;
    j["counterexample"] = {{"bucket", c.bucket},
                           {"first", c.first},
                           {"second", c.second},
                           {"symmetric_difference", c.symmetric_difference},
                           {"note", c.note}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j.dump();
}

Count revolving_door_rank(std::span<const Label> config, std::size_t N) {
  // Relabel so the label absorbed first becomes 1, then
  // rank(T) = C(t_k, k) - 1 - rank(T minus t_k).
  std::vector<std::uint64_t> t;
  t.reserve(config.size());
  for (Label x : config) {
    if (x < 1 || static_cast<std::uint64_t>(x) > N) {
      throw PreconditionError("label " + std::to_string(x) + " outside 1.." + std::to_string(N));
    }
    t.push_back(N + 1 - static_cast<std::uint64_t>(x));
  }
  std::sort(t.begin(), t.end());
  if (std::adjacent_find(t.begin(), t.end()) != t.end()) {
    throw PreconditionError("combination repeats an element");
  }
  Count r = 0;
  for (std::size_t i = 0; i < t.size(); ++i) r = binomial(t[i], i + 1) - 1 - r;
  return r;
}

PropertyReport check_rank_data(const RankFamily& ranks, const SizedFamily<Label>& configs,
                               std::size_t N,
                               std::vector<std::pair<std::string, std::string>> params) {
  PropertyReport r{"rank-consistency", std::move(params), true, std::nullopt};
  auto fail = [&](std::size_t k, std::string first, std::string second, std::string note) {
    r.pass = false;
    r.counterexample = Counterexample{k, std::move(first), std::move(second), "", std::move(note)};
    return r;
  };
  if (ranks.capacity() != configs.capacity()) {
    return fail(0, "", "", "capacity mismatch");
  }
  for (std::size_t k = 0; k <= ranks.capacity(); ++k) {
    const auto& b = ranks[k];
    const Count expected = binomial(N, k);
    if (b.size() != expected || configs[k].size() != expected) {
      return fail(k, "", "",
                  "bucket sizes " + std::to_string(b.size()) + " and " +
                      std::to_string(configs[k].size()) + ", expected " +
                      std::to_string(expected));
    }
    std::vector<bool> seen(b.size(), false);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] >= expected) {
        return fail(k, std::to_string(b[i]), "",
                    "rank at position " + std::to_string(i) + " is out of range");
      }
      if (seen[b[i]]) {
        return fail(k, std::to_string(b[i]), "",
                    "rank repeated at position " + std::to_string(i));
      }
      seen[b[i]] = true;
      Count closed = 0;
      try {
        closed = revolving_door_rank(configs[k][i], N);
      } catch (const PreconditionError& e) {
        return fail(k, to_string(configs[k][i]), "", e.what());
      }
      if (closed != b[i]) {
        return fail(k, std::to_string(b[i]), to_string(configs[k][i]),
                    "position " + std::to_string(i) + " holds rank " + std::to_string(b[i]) +
                        " but its combination ranks " + std::to_string(closed));
      }
    }
  }
  return r;
}

PropertyReport check_rank_consistency(std::size_t K, std::size_t N) {
  return check_rank_data(kcombs_revol_int(K, N), kcombs_revol(K, N), N,
                         {{"k", std::to_string(K)}, {"n", std::to_string(N)}});
}

PropertyReport compare_nested(std::string name,
                              std::vector<std::pair<std::string, std::string>> params,
                              const NestedResult<Label>& candidate,
                              const NestedResult<Label>& reference, Order outer_order) {
  auto inner = compare_multisets(name, params, candidate.inner, reference.inner, Order::unordered);
  if (!inner.pass) {
    inner.counterexample->note = "inner: " + inner.counterexample->note;
    return inner;
  }
  return compare_multisets(std::move(name), std::move(params), candidate.outer, reference.outer,
                           outer_order);
}

namespace {

std::string variant_name(FusionVariant v) {
  switch (v) {
    case FusionVariant::dc: return "nccg-dc";
    case FusionVariant::seq: return "nccg-seq";
    case FusionVariant::revol: return "nccg-revol";
    case FusionVariant::multi: return "nccg-multi";
    case FusionVariant::perms: return "npcg";
  }
  return "unknown";
}

std::string join_sizes(std::span<const std::size_t> ds) {
  std::string s;
  for (std::size_t d : ds) s += (s.empty() ? "" : ",") + std::to_string(d);
  return s;
}

}  // namespace

PropertyReport check_fusion(FusionVariant v, std::size_t K, const InnerSizeSet& ds,
                            std::span<const Label> xs, const SplitPlan& plan) {
  std::vector<std::pair<std::string, std::string>> params{
      {"gen", variant_name(v)},
      {"k", std::to_string(K)},
      {v == FusionVariant::multi ? "ds" : "d", join_sizes(ds.sizes())},
      {"n", std::to_string(xs.size())},
      {"split", plan.describe()}};
  const std::size_t D = ds.sizes().front();
  if (v != FusionVariant::multi && ds.sizes().size() != 1) {
    throw PreconditionError("only the multi-size variant takes several inner sizes");
  }
  switch (v) {
    case FusionVariant::dc:
      return compare_nested("fusion", params, nested_combs_dc(K, D, xs, plan),
                            nested_combs_spec(K, D, xs), Order::unordered);
    case FusionVariant::seq:
      return compare_nested("fusion", params, nested_combs_seq(K, D, xs),
                            nested_combs_spec(K, D, xs), Order::unordered);
    case FusionVariant::revol: {
      const auto ground = GroundSet::iota(xs.size());
      return compare_nested("fusion", params, nested_combs_revol(K, D, xs.size()),
                            nested_combs_spec(K, D, ground.labels()), Order::unordered);
    }
    case FusionVariant::multi:
      return compare_nested("fusion", params, nested_combs_multi(K, ds, xs, plan),
                            nested_combs_multi_spec(K, ds, xs), Order::unordered);
    case FusionVariant::perms:
      return compare_nested("fusion", params, nested_perms_dc(K, D, xs, plan),
                            nested_perms_spec(K, D, xs), Order::ordered);
  }
  throw PreconditionError("unknown fusion variant");
}

PropertyReport check_fusion(std::size_t K, std::size_t D, std::span<const Label> xs) {
  return check_fusion(FusionVariant::dc, K, InnerSizeSet({D}), xs,
                      SplitPlan::midpoint(xs.size()));
}

}  // namespace cgen
