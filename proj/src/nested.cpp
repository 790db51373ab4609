#include "cgen/nested.hpp"

#include <sstream>

namespace cgen {

void require_inner_size(std::size_t D) {
  if (D < 2) {
    throw PreconditionError("nested generators need inner size D >= 2, got " + std::to_string(D));
  }
}

InnerSizeSet::InnerSizeSet(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw PreconditionError("inner size list is empty");
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    require_inner_size(sizes_[i]);
    if (i > 0 && sizes_[i] <= sizes_[i - 1]) {
      throw PreconditionError("inner sizes must be strictly increasing");
    }
  }
}

InnerSizeSet InnerSizeSet::parse(const std::string& csv) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      throw PreconditionError("not an inner size: '" + item + "'");
    }
    if (used != item.size()) throw PreconditionError("not an inner size: '" + item + "'");
    sizes.push_back(static_cast<std::size_t>(v));
  }
  return InnerSizeSet(std::move(sizes));
}

NestedResult<Label> nested_combs_revol(std::size_t K, std::size_t D, std::size_t N) {
  require_inner_size(D);
  auto css = SizedFamily<Label>::unit(D);
  auto ncss = SizedFamily<Config<Label>>::unit(K);
  for (std::size_t x = N; x >= 1; --x) {
    css = for_revol(static_cast<Label>(x), css);
    if (css[D].empty()) {
      ncss = SizedFamily<Config<Label>>::unit(K);
    } else {
      ncss = convol(CrossJoin{}, detail::kcombs_seq_unchecked<Config<Label>>(K, css[D]), ncss);
    }
    css[D].clear();
  }
  return {std::move(css), std::move(ncss)};
}

NestedRankResult nested_combs_revol_int(std::size_t K, std::size_t D, std::size_t N) {
  require_inner_size(D);
  (void)binomial(N, D);
  using Rank = RankFamily::Rank;
  RankFamily css(D);
  css[0].push_back(0);
  auto ncss = SizedFamily<Rank>::unit(K);
  for (std::size_t n = 0; n < N; ++n) {
    css = for_revol_int(n, css);
    if (css[D].empty()) {
      ncss = SizedFamily<Rank>::unit(K);
    } else {
      ncss = convol(CrossJoin{}, detail::kcombs_seq_unchecked<Rank>(K, css[D]), ncss);
    }
    css[D].clear();
  }
  return {std::move(css), std::move(ncss)};
}

}  // namespace cgen
