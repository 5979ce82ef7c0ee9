#include <doctest.h>

#include "cantor/construct.hpp"
#include "cantor/errors.hpp"
#include "cantor/oracle.hpp"

using namespace cantor;

namespace {
BitWord bw(const char* s) { return BitWord::parse(s); }
}  // namespace

TEST_CASE("branch bits") {
  CHECK(Branch(Lasso::ones()).bit_at(5) == 1);
  Branch alt(Lasso(BitWord{}, bw("10")));
  CHECK(Branch::stretch(alt).prefix(6) == bw("100111"));
  CHECK(Branch::interleave(Lasso::zeros(), Lasso::ones()).bit_at(3) == 1);
  CHECK(Branch::interleave(Lasso::zeros(), Lasso::ones()).bit_at(2) == 0);
  CHECK(Branch::baire(NatWord{0, 2}, NatWord{1}).prefix(6) == bw("100101"));
  CHECK_THROWS_AS(Lasso(bw("1"), BitWord{}), DomainError);
}

TEST_CASE("branch JSON round trip") {
  Branch z = Branch::stretch(Branch::interleave(Lasso(bw("1"), bw("0")), Lasso::ones()));
  CHECK(Branch::from_json(z.to_json()).prefix(40) == z.prefix(40));
}

TEST_CASE("clopen oracle bounds") {
  auto a = from_clopen(ClopenSet::from_words({bw("0")}));
  CHECK(a->local_bounds(bw("0"), 0) == RatInterval::point(1));
  CHECK(a->local_bounds(bw("1"), 0) == RatInterval::point(0));
  CHECK(a->local_bounds(BitWord{}, 0) == RatInterval::point(Rational(1, 2)));
}

TEST_CASE("composition") {
  auto full = from_clopen(ClopenSet::full());
  auto none = from_clopen(ClopenSet::empty());
  auto a = compose({{bw("0"), full}, {bw("1"), none}});
  CHECK(a->local_bounds(BitWord{}, 3) == RatInterval::point(Rational(1, 2)));
  CHECK_THROWS_AS(compose({{bw("0"), full}, {bw("01"), none}}), DomainError);

  // ⋃_n 0^n 1 D with μ(D) = 3/8 has measure 3/8.
  auto d = from_clopen(canonical_of_measure(Rational(3, 8)));
  std::vector<Part> parts;
  for (std::size_t n = 0; n < 30; ++n) parts.push_back({BitWord::constant(n, 0).append(1), d});
  auto b = compose(parts);
  auto r = b->local_bounds(BitWord{}, 40);
  CHECK(r.contains(Rational(3, 8) * (1 - Rational(1, 1 << 30))));
  CHECK(r.hi <= Rational(3, 8));
  CHECK(complement_of(b)->local_bounds(BitWord{}, 40).lo >= Rational(5, 8));
}

TEST_CASE("trace of the full space") {
  auto a = from_clopen(ClopenSet::full());
  for (const auto& p : trace(*a, Lasso(bw("10"), bw("110")), 12, 2)) CHECK(p.bounds == RatInterval::point(1));
}

TEST_CASE("classification") {
  auto a = from_clopen(ClopenSet::from_words({bw("0")}));
  auto c = classify(*a, Lasso::zeros(), Rational(1, 256), 40, kDefaultBudget);
  CHECK(c.verdict == PointClassification::Verdict::converges);
  CHECK(c.value == RatInterval::point(1));

  auto d = dualistic_of_measure(Rational(1, 3));
  CHECK(d->local_bounds(BitWord{}, 0) == RatInterval::point(Rational(1, 3)));
  auto cd = classify(*d, Lasso::zeros(), Rational(1, 256), 120, kDefaultBudget);
  CHECK(cd.verdict == PointClassification::Verdict::converges);
  CHECK(cd.value.contains(Rational(0)));
  CHECK(cd.value.width() <= Rational(1, 256));
}
