#include <doctest.h>

#include "cgen/binomial.hpp"
#include "cgen/errors.hpp"

using namespace cgen;

namespace {

// Multiplicative formula in 128-bit arithmetic; exact while the result fits.
unsigned __int128 binomial_wide(unsigned n, unsigned k) {
  if (k > n) return 0;
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_SUITE("binomial") {
  TEST_CASE("small values") {
    CHECK(binomial(3, 2) == 3);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(2, 5) == 0);
    CHECK(binomial(30, 15) == 155117520);
    CHECK(binomial(30, 4) == 27405);
  }

  TEST_CASE("agrees with the multiplicative formula") {
    for (unsigned n = 0; n <= 62; ++n) {
      for (unsigned k = 0; k <= n; ++k) {
        CHECK(static_cast<unsigned __int128>(binomial(n, k)) == binomial_wide(n, k));
      }
    }
  }

  TEST_CASE("overflow is reported, never wrapped") {
    CHECK(binomial(67, 33) == static_cast<Count>(binomial_wide(67, 33)));
    CHECK_THROWS_AS(binomial(68, 34), OverflowError);
    CHECK_THROWS_AS(checked_mul(Count{1} << 40, Count{1} << 40), OverflowError);
    CHECK_THROWS_AS(checked_add(~Count{0}, 1), OverflowError);
  }

  TEST_CASE("falling factorial") {
    CHECK(falling_factorial(4, 3) == 24);
    CHECK(falling_factorial(4, 0) == 1);
    CHECK(falling_factorial(3, 4) == 0);
    CHECK(falling_factorial(10, 10) == 3628800);
  }

  TEST_CASE("table") {
    BinomialTable t(70, 40);
    CHECK(t.at(30, 15) == 155117520);
    CHECK(t.at(5, 7) == 0);
    CHECK(t.representable(67, 33));
    CHECK_FALSE(t.representable(68, 34));
    CHECK_THROWS_AS(t.at(68, 34), OverflowError);
    CHECK_THROWS_AS(t.at(71, 1), PreconditionError);
  }
}
