#include <doctest.h>

#include "cgen/nested.hpp"
#include "cgen/oracle.hpp"

using namespace cgen;

namespace {

std::vector<Label> iota_labels(std::size_t n) {
  const auto g = GroundSet::iota(n);
  return {g.labels().begin(), g.labels().end()};
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

}  // namespace

TEST_SUITE("nested") {
  TEST_CASE("golden prefixes") {
    const std::vector<Label> xs{1, 2, 3};
    CHECK(starts_with(to_string(nested_combs_dc<Label>(2, 2, xs)),
                      "([[[]],[[1],[2],[3]],[]],[[[]],[[[2,3]],[[1,2]],[[1,3]]],[[[2,3],[1,2]],"));
    CHECK(starts_with(to_string(nested_combs_seq<Label>(2, 2, xs)),
                      "([[[]],[[1],[2],[3]],[]],[[[]],[[[1,2]],[[1,3]],[[2,3]]],[[[1,2],[1,3]],"));
    CHECK(starts_with(to_string(nested_combs_revol(2, 2, 3)),
                      "([[[]],[[3],[2],[1]],[]],[[[]],[[[2,1]],[[3,1]],[[3,2]]],[[[2,1],[3,1]],"));
    CHECK(to_string(nested_combs_revol_int(2, 2, 3)) ==
          "([[0],[0,1,2],[]],[[[]],[[1],[2],[0]],[[1,2],[1,0],[2,0]]])");
    CHECK(starts_with(to_string(nested_combs_multi<Label>(2, InnerSizeSet({2, 3}), xs)),
                      "([[[]],[[1],[2],[3]],[[1,2],[1,3],[2,3]],[]],[[[]],[[[2,3]],[[1,2]],[[1,3]],"
                      "[[1,2,3]]]"));
  }

  TEST_CASE("complete nested golden values") {
    const std::vector<Label> xs{1, 2, 3};
    CHECK(to_string(nested_combs_dc<Label>(2, 2, xs)) ==
          "([[[]],[[1],[2],[3]],[]],[[[]],[[[2,3]],[[1,2]],[[1,3]]],"
          "[[[2,3],[1,2]],[[2,3],[1,3]],[[1,2],[1,3]]]])");
    CHECK(to_string(nested_combs_seq<Label>(2, 2, xs)) ==
          "([[[]],[[1],[2],[3]],[]],[[[]],[[[1,2]],[[1,3]],[[2,3]]],"
          "[[[1,2],[1,3]],[[1,2],[2,3]],[[1,3],[2,3]]]])");
    CHECK(to_string(nested_combs_revol(2, 2, 3)) ==
          "([[[]],[[3],[2],[1]],[]],[[[]],[[[2,1]],[[3,1]],[[3,2]]],"
          "[[[2,1],[3,1]],[[2,1],[3,2]],[[3,1],[3,2]]]])");
    CHECK(to_string(nested_combs_multi<Label>(2, InnerSizeSet({2, 3}), xs)) ==
          "([[[]],[[1],[2],[3]],[[1,2],[1,3],[2,3]],[]],[[[]],[[[2,3]],[[1,2]],[[1,3]],[[1,2,3]]],"
          "[[[2,3],[1,2]],[[2,3],[1,3]],[[2,3],[1,2,3]],[[1,2],[1,3]],[[1,2],[1,2,3]],"
          "[[1,3],[1,2,3]]]])");
    // Inner items are combinations, so [1,2] is the only atom.
    const std::vector<Label> two{1, 2};
    CHECK(to_string(nested_perms_dc<Label>(2, 2, two)) == "([[[]],[[1],[2]],[]],[[[]],[[[1,2]]],[]])");
  }

  TEST_CASE("sequential fusion, one outer size") {
    const std::vector<Label> xs{1, 2, 3};
    CHECK(to_string(nested_combs_seq<Label>(1, 2, xs).outer[1]) == "[[[1,2]],[[1,3]],[[2,3]]]");
  }

  TEST_CASE("unfused reference construction") {
    const std::vector<Label> xs{1, 2, 3};
    const auto s = nested_combs_spec<Label>(2, 2, xs);
    CHECK(s.outer[1].size() == 3);
    CHECK(s.outer[2].size() == 3);
    CHECK(nested_combs_spec<Label>(1, 2, xs).outer[1].size() == 3);
    const std::vector<Label> small{1};
    CHECK(to_string(nested_combs_spec<Label>(2, 2, small).outer) == "[[[]],[],[]]");
    CHECK(to_string(nested_combs_dc<Label>(2, 2, small).outer) == "[[[]],[],[]]");
    const auto six = iota_labels(6);
    CHECK(nested_combs_dc<Label>(3, 2, six).outer[3].size() == 455);
  }

  TEST_CASE("preconditions") {
    const std::vector<Label> xs{1, 2, 3}, dup{1, 1};
    CHECK_THROWS_AS(nested_combs_dc<Label>(2, 1, xs), PreconditionError);
    CHECK_THROWS_AS(nested_combs_seq<Label>(2, 2, dup), PreconditionError);
    CHECK_THROWS_AS(InnerSizeSet({3, 2}), PreconditionError);
    CHECK_THROWS_AS(InnerSizeSet({1, 2}), PreconditionError);
    CHECK_THROWS_AS(InnerSizeSet({}), PreconditionError);
    CHECK(InnerSizeSet::parse("2,4").max() == 4);
  }

  TEST_CASE("nested invariants") {
    const auto xs = iota_labels(6);
    const auto r = nested_combs_dc<Label>(3, 3, xs, SplitPlan::random(6, 9));
    for (std::size_t k = 0; k <= 3; ++k) {
      for (const auto& c : r.outer[k]) {
        REQUIRE(c.size() == k);
        auto atoms = c;
        for (auto& a : atoms) {
          CHECK(a.size() == 3);
          std::sort(a.begin(), a.end());
          CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
        }
        std::sort(atoms.begin(), atoms.end());
        CHECK(std::adjacent_find(atoms.begin(), atoms.end()) == atoms.end());
      }
    }
    const auto ranks = nested_combs_revol_int(2, 3, 6);
    for (const auto& b : ranks.outer) {
      for (const auto& c : b) {
        for (auto a : c) CHECK(a < binomial(6, 3));
      }
    }
  }

  TEST_CASE("fusion holds for every variant and plan") {
    for (std::size_t n = 0; n <= 7; ++n) {
      const auto xs = iota_labels(n);
      for (const auto& plan :
           {SplitPlan::midpoint(n), SplitPlan::one_rest(n), SplitPlan::random(n, 0xC0FFEE)}) {
        for (std::size_t D = 2; D <= 3; ++D) {
          for (std::size_t K = 0; K <= 3; ++K) {
            const InnerSizeSet ds({D});
            for (auto v : {FusionVariant::dc, FusionVariant::seq, FusionVariant::revol,
                           FusionVariant::perms}) {
              const auto r = check_fusion(v, K, ds, xs, plan);
              CHECK_MESSAGE(r.pass, r.to_json_line());
            }
          }
        }
        for (std::size_t K = 0; K <= 2; ++K) {
          const auto r = check_fusion(FusionVariant::multi, K, InnerSizeSet({2, 3}), xs, plan);
          CHECK_MESSAGE(r.pass, r.to_json_line());
        }
      }
    }
  }
}
