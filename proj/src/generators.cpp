#include "cgen/generators.hpp"

#include <algorithm>

namespace cgen {

SizedFamily<Label> for_revol(Label x, const SizedFamily<Label>& family) {
  SizedFamily<Label> out(family.capacity());
  out[0] = family[0];
  for (std::size_t k = family.capacity(); k >= 1; --k) {
    auto& b = out[k];
    const auto& prev = family[k - 1];
    b.reserve(family[k].size() + prev.size());
    b.insert(b.end(), family[k].begin(), family[k].end());
    for (auto it = prev.rbegin(); it != prev.rend(); ++it) {
      Config<Label> c = *it;
      c.push_back(x);
      b.push_back(std::move(c));
    }
  }
  return out;
}

SizedFamily<Label> kcombs_revol(std::size_t K, std::size_t N) {
  auto family = SizedFamily<Label>::unit(K);
  for (std::size_t x = N; x >= 1; --x) family = for_revol(static_cast<Label>(x), family);
  return family;
}

RankFamily for_revol_int(std::size_t n, const RankFamily& family) {
  RankFamily out(family.capacity());
  out[0] = family[0];
  for (std::size_t k = 1; k <= family.capacity(); ++k) {
    const auto& prev = family[k - 1];
    auto& b = out[k];
    b.reserve(family[k].size() + prev.size());
    b.insert(b.end(), family[k].begin(), family[k].end());
    if (prev.empty()) continue;
    const Count last = binomial(n + 1, k) - 1;
    for (auto it = prev.rbegin(); it != prev.rend(); ++it) {
      if (*it > last) {
        throw PreconditionError("rank " + std::to_string(*it) + " out of range for C(" +
                                std::to_string(n + 1) + "," + std::to_string(k) + ")");
      }
      b.push_back(last - *it);
    }
  }
  return out;
}

RankFamily kcombs_revol_int(std::size_t K, std::size_t N) {
  for (std::size_t k = 0; k <= std::min(K, N); ++k) (void)binomial(N, k);
  RankFamily family(K);
  family[0].push_back(0);
  for (std::size_t n = 0; n < N; ++n) family = for_revol_int(n, family);
  return family;
}

std::vector<Count> combination_rows(std::size_t K, std::size_t n) {
  std::vector<Count> rows(K + 1);
  for (std::size_t k = 0; k <= K; ++k) rows[k] = binomial(n, k);
  return rows;
}

void kcombs_seq_into(BlockedTable& table, Index begin, Index end) {
  const std::size_t K = table.capacity();
  // Bucket k currently occupies rows [start[k], rows(k)).
  std::vector<Count> start(K + 1);
  for (std::size_t k = 0; k <= K; ++k) start[k] = table.rows(k);
  if (table.rows(0) != 1) table.reject_overflow("bucket 0 must hold exactly the empty config");
  start[0] = 0;
  for (Index x = end; x-- > begin;) {
    for (std::size_t k = K; k >= 1; --k) {
      const Count len_prev = table.rows(k - 1) - start[k - 1];
      if (len_prev > start[k]) table.reject_overflow("sequential fill overran its bucket");
      const Count first = start[k] - len_prev;
      for (Count r = 0; r < len_prev; ++r) {
        auto dst = table.row(k, first + r);
        auto src = table.row(k - 1, start[k - 1] + r);
        dst[0] = x;
        std::copy(src.begin(), src.end(), dst.begin() + 1);
      }
      start[k] = first;
    }
  }
  for (std::size_t k = 0; k <= K; ++k) table.add_filled(k, table.rows(k) - start[k]);
}

BlockedTable kcombs_seq_blocked(std::size_t K, std::size_t N) {
  BlockedTable table(combination_rows(K, N));
  kcombs_seq_into(table, 0, static_cast<Index>(N));
  return table;
}

BlockedTable kcombs_revol_blocked(std::size_t K, std::size_t N) {
  BlockedTable table(combination_rows(K, N));
  std::vector<Count> len(K + 1, 0);
  len[0] = 1;
  for (Index x = static_cast<Index>(N); x-- > 0;) {
    for (std::size_t k = K; k >= 1; --k) {
      const Count len_prev = len[k - 1];
      if (len[k] + len_prev > table.rows(k)) table.reject_overflow("revolving fill overran");
      for (Count r = len_prev; r-- > 0;) {
        auto dst = table.row(k, len[k]++);
        auto src = table.row(k - 1, r);
        std::copy(src.begin(), src.end(), dst.begin());
        dst[k - 1] = x;
      }
    }
  }
  for (std::size_t k = 0; k <= K; ++k) table.add_filled(k, len[k]);
  return table;
}

}  // namespace cgen
