#include <doctest.h>

#include "cantor/errors.hpp"
#include "cantor/exactnum.hpp"

using namespace cantor;

namespace {
Rational q(const char* s) { return parse_rational(s); }
}  // namespace

TEST_CASE("rational parsing is canonical") {
  CHECK(q("2/4") == q("1/2"));
  CHECK(to_string(q("6/8")) == "3/4");
  CHECK(ratio(2, 4) == q("1/2"));
  CHECK_THROWS_AS(parse_rational("1/0"), SpecError);
  CHECK_THROWS_AS(parse_rational("abc"), SpecError);
}

TEST_CASE("base four digits") {
  CHECK(four_ary_digits(q("1/4"), 3) == std::vector<int>{1, 0, 0});
  CHECK(four_ary_digits(q("1/3"), 5) == std::vector<int>{1, 1, 1, 1, 1});
  CHECK(four_ary_digits(q("3/16"), 4) == std::vector<int>{0, 3, 0, 0});
}

TEST_CASE("dyadic rank order") {
  CHECK(dyadic_rank(Dyadic::from_rational(q("1/2"))) == 0);
  CHECK(dyadic_rank(Dyadic::from_rational(q("1/4"))) == 1);
  CHECK(dyadic_rank(Dyadic::from_rational(q("3/4"))) == 2);
  for (long r = 0; r < 40; ++r) CHECK(dyadic_rank(dyadic_at_rank(r)) == r);
}

TEST_CASE("least dyadic in an open interval") {
  CHECK(least_dyadic_in(q("7/24"), q("2/3")).value() == q("1/2"));
  CHECK(least_dyadic_in(q("-1/6"), q("5/6")).value() == q("1/2"));
  CHECK(least_dyadic_in(q("3/5"), q("7/10")).value() == q("5/8"));
  // Brute force: nothing of smaller rank lies inside.
  auto d = least_dyadic_in(q("100/301"), q("101/301"));
  auto rank = dyadic_rank(d);
  for (long r = 0; r < rank; ++r) {
    auto v = dyadic_at_rank(r).value();
    CHECK_FALSE((q("100/301") < v && v < q("101/301")));
  }
}

TEST_CASE("interval arithmetic") {
  RatInterval a(q("1/4"), q("1/2")), b(q("3/8"), q("3/4"));
  CHECK(intersect(a, b) == RatInterval(q("3/8"), q("1/2")));
  CHECK(hull(a, b) == RatInterval(q("1/4"), q("3/4")));
  CHECK(add(a, b) == RatInterval(q("5/8"), q("5/4")));
  CHECK(scale(a, -2) == RatInterval(-1, q("-1/2")));
  CHECK_THROWS_AS(intersect(a, RatInterval(q("3/5"), 1)), DomainError);
}
