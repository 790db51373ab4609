#include <doctest.h>

#include <random>

#include "cgen/generators.hpp"
#include "cgen/oracle.hpp"
#include "cgen/semiring.hpp"

using namespace cgen;

namespace {

using B = Bucket<int>;
using F = SizedFamily<int>;

B random_bucket(std::mt19937& rng, int max_configs, int max_len) {
  std::uniform_int_distribution<int> count(0, max_configs), len(0, max_len), val(1, 9);
  B b(count(rng));
  for (auto& c : b) {
    c.resize(len(rng));
    for (auto& x : c) x = val(rng);
  }
  return b;
}

// Bucket as a sorted multiset of sequences.
B sorted(B b) {
  std::sort(b.begin(), b.end());
  return b;
}

B concat(B a, const B& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST_SUITE("semiring") {
  TEST_CASE("cross join") {
    CHECK(cross_join(B{{1}, {2}}, B{{3}, {4}}) == B{{1, 3}, {1, 4}, {2, 3}, {2, 4}});
    CHECK(cross_join(B{}, B{{1}}).empty());
    CHECK(cross_join(B{{}}, B{{1}, {2}}) == B{{1}, {2}});
  }

  TEST_CASE("interleave and merge") {
    CHECK(interleave<int>({1}, {2}) == B{{1, 2}, {2, 1}});
    CHECK(interleave<int>({}, {1, 2}) == B{{1, 2}});
    CHECK(to_string(interleave<int>({1, 2}, {3, 4})) ==
          "[[1,2,3,4],[1,3,2,4],[1,3,4,2],[3,1,2,4],[3,1,4,2],[3,4,1,2]]");
    CHECK(merge(B{{1}}, B{{2}, {3}}) == B{{1, 2}, {2, 1}, {1, 3}, {3, 1}});
    CHECK(interleave<int>({1, 2, 3}, {4, 5}).size() == 10);
  }

  TEST_CASE("rev_inits") {
    CHECK(to_string(rev_inits<int>(std::vector<int>{1, 2, 3})) == "[[],[1],[2,1],[3,2,1]]");
    CHECK(rev_inits<int>(std::vector<int>{}).size() == 1);
    CHECK(to_string(rev_inits<int>(std::vector<int>{7})) == "[[],[7]]");
    std::vector<int> xs{4, 8, 15, 16, 23, 42};
    const auto r = rev_inits<int>(xs);
    REQUIRE(r.size() == xs.size() + 1);
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::vector<int> want(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(i));
      std::reverse(want.begin(), want.end());
      CHECK(r[i] == want);
    }
  }

  TEST_CASE("init and tail are total") {
    CHECK(init(std::vector<int>{}).empty());
    CHECK(tail(std::vector<int>{}).empty());
    CHECK(init(std::vector<int>{1, 2, 3}) == std::vector<int>{1, 2});
    CHECK(tail(std::vector<int>{1, 2, 3}) == std::vector<int>{2, 3});
  }

  TEST_CASE("set_empty") {
    CHECK(to_string(set_empty(2, std::vector<std::vector<int>>{{1}, {2}, {3}, {4}})) ==
          "[[1],[2],[],[4]]");
    SizedFamily<int> f(std::vector<B>{{{1}}, {{2}}, {{3}}, {{4}}});
    CHECK(to_string(set_empty(2, f)) == "[[[1]],[[2]],[],[[4]]]");
    CHECK(to_string(set_empty(0, F::unit(2))) == "[[],[],[]]");
    std::vector<int> xs{1, 2};
    CHECK(to_string(set_empty(1, kcombs_seq<int>(2, xs))) == "[[[]],[],[[1,2]]]");
    CHECK_THROWS_AS(set_empty(3, F::unit(2)), PreconditionError);
  }

  TEST_CASE("convol examples") {
    std::vector<int> one{1}, two{2}, rest{2, 3};
    CHECK(convol(CrossJoin{}, F::unit(2), kcombs_seq<int>(2, rest)) == kcombs_seq<int>(2, rest));
    CHECK(to_string(convol(CrossJoin{}, kcombs_seq<int>(2, one), kcombs_seq<int>(2, rest))) ==
          "[[[]],[[1],[2],[3]],[[1,2],[1,3],[2,3]]]");
    CHECK(to_string(convol(Merge{}, kperms_dc<int>(2, one), kperms_dc<int>(2, two))) ==
          "[[[]],[[1],[2]],[[1,2],[2,1]]]");
    CHECK_THROWS_AS(convol(CrossJoin{}, F::unit(1), F::unit(2)), PreconditionError);
  }

  TEST_CASE("convol_new keeps only products drawing from both sides") {
    std::vector<int> left{1, 2}, right{3, 4};
    const auto a = kcombs_seq<int>(3, left);
    const auto b = kcombs_seq<int>(3, right);
    const auto n = convol_new(CrossJoin{}, a, b);
    CHECK(to_string(n) == "[[],[],[[1,3],[1,4],[2,3],[2,4]],[[1,2,3],[1,2,4],[1,3,4],[2,3,4]]]");
    // convol = convol_new plus the products with an empty side.
    const auto full = convol(CrossJoin{}, a, b);
    for (std::size_t k = 0; k <= 3; ++k) {
      B parts = n[k];
      parts = concat(parts, cross_join(a[k], b[0]));
      if (k > 0) parts = concat(parts, cross_join(a[0], b[k]));
      CHECK(sorted(parts) == sorted(full[k]));
    }
  }

  TEST_CASE("semiring laws on random operands") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      const B x = random_bucket(rng, 3, 2), y = random_bucket(rng, 3, 2), z = random_bucket(rng, 3, 2);
      CHECK(sorted(cross_join(cross_join(x, y), z)) == sorted(cross_join(x, cross_join(y, z))));
      CHECK(sorted(merge(merge(x, y), z)) == sorted(merge(x, merge(y, z))));
      CHECK(cross_join(B{{}}, x) == x);
      CHECK(cross_join(x, B{{}}) == x);
      CHECK(merge(B{{}}, x) == x);
      CHECK(merge(x, B{{}}) == x);
      CHECK(cross_join(B{}, x).empty());
      CHECK(merge(x, B{}).empty());
      // Distributivity over union.
      CHECK(sorted(merge(x, concat(y, z))) == sorted(concat(merge(x, y), merge(x, z))));
      CHECK(sorted(cross_join(x, concat(y, z))) ==
            sorted(concat(cross_join(x, y), cross_join(x, z))));
    }
  }

  TEST_CASE("bucket sizes follow the Vandermonde sums") {
    std::vector<int> left{1, 2, 3, 4}, right{5, 6, 7};
    for (std::size_t K = 0; K <= 7; ++K) {
      const auto a = kcombs_seq<int>(K, left), b = kcombs_seq<int>(K, right);
      const auto c = convol(CrossJoin{}, a, b);
      const auto p = convol(Merge{}, kperms_dc<int>(K, left), kperms_dc<int>(K, right));
      for (std::size_t k = 0; k <= K; ++k) {
        Count want = 0, want_p = 0;
        for (std::size_t j = 0; j <= k; ++j) {
          want += a[k - j].size() * b[j].size();
          want_p += kperms_dc<int>(K, left)[k - j].size() * kperms_dc<int>(K, right)[j].size() *
                    Merge::per_pair(k - j, j);
        }
        CHECK(c[k].size() == want);
        CHECK(c[k].size() == binomial(7, k));
        CHECK(p[k].size() == want_p);
        CHECK(p[k].size() == falling_factorial(7, k));
      }
    }
  }
}
