#include <doctest.h>

#include "cantor/construct.hpp"
#include "cantor/errors.hpp"

using namespace cantor;

namespace {
BitWord bw(const char* s) { return BitWord::parse(s); }
}  // namespace

TEST_CASE("dualistic sets of small measure") {
  auto third = DualisticOracle::w_f(Rational(1, 3));
  for (std::size_t n = 1; n < 6; ++n) CHECK(third->f(n) == 1);

  auto quarter = DualisticOracle::w_f(Rational(1, 4));
  CHECK(quarter->f(1) == 1);
  CHECK(quarter->f(2) == 0);
  CHECK(quarter->f(3) == 0);
  CHECK(quarter->exact(BitWord{}) == Rational(1, 4));

  auto eighth = DualisticOracle::w_f(Rational(1, 8));
  CHECK(eighth->f(1) == Rational(1, 2));
  CHECK(eighth->f(2) == 0);
  CHECK(eighth->exact(BitWord{}) == Rational(1, 8));

  CHECK_THROWS_AS(DualisticOracle::w_f(Rational(1, 2)), DomainError);
  CHECK_THROWS_AS(DualisticOracle::w_f(0), DomainError);
}

TEST_CASE("dualistic sets of any measure") {
  auto a = DualisticOracle::of_measure(Rational(5, 8));
  CHECK(a->d() == Rational(1, 2));
  CHECK(a->w_measure() == Rational(1, 8));
  CHECK(a->exact(BitWord{}) == Rational(5, 8));
  CHECK(a->local_bounds(BitWord{}, 0) == RatInterval::point(Rational(5, 8)));
  CHECK_THROWS_AS(DualisticOracle::of_measure(1), DomainError);
  CHECK_THROWS_AS(DualisticOracle::of_measure(0), DomainError);
}

TEST_CASE("countable range") {
  auto empty = solid_countable_range({});
  auto m = empty->local_bounds(BitWord{}, 2);
  CHECK(m.is_point());
  CHECK(m.lo > 0);
  CHECK(m.lo < 1);

  auto a = solid_countable_range({Rational(1, 3), Rational(1, 2), Rational(2, 3)});
  auto des = a->designated();
  REQUIRE(des.size() >= 3);
  for (const Rational& v : {Rational(1, 3), Rational(1, 2), Rational(2, 3)}) {
    bool found = false;
    for (const auto& d : des) found = found || d.density == RatInterval::point(v);
    CHECK(found);
  }
  auto c = classify(*a, Lasso::zeros(), Rational(1, 256), 80, kDefaultBudget);
  CHECK(c.verdict == PointClassification::Verdict::converges);
  CHECK(c.value.contains(Rational(0)));
  CHECK_THROWS_AS(solid_countable_range({Rational(1, 2), Rational(1, 2)}), DomainError);
  CHECK_THROWS_AS(solid_countable_range({Rational(3, 2)}), DomainError);
}

TEST_CASE("offspring of the full tree with constant labels") {
  auto labels = std::make_shared<ExplicitLabels>(std::map<BitWord, Rational>{}, Rational(1, 2));
  auto a = offspring_build(TreePresentation::full(), labels);
  Rational prev = 1;
  for (unsigned b : {2u, 6u, 12u}) {
    auto r = a->local_bounds(BitWord{}, b);
    CHECK(r.contains(Rational(1, 2)));
    CHECK(r.width() <= prev);
    prev = r.width();
  }
  CHECK(prev < Rational(1, 1000));
}

TEST_CASE("offspring rejects labels outside the open unit interval") {
  auto build = [](Rational v) {
    auto labels = std::make_shared<ExplicitLabels>(std::map<BitWord, Rational>{{bw("1"), v}}, Rational(1, 2));
    return offspring_build(TreePresentation::full(), labels)->local_bounds(BitWord{}, 4);
  };
  CHECK_THROWS_AS(build(1), DomainError);
  CHECK_THROWS_AS(build(0), DomainError);
  CHECK_NOTHROW(build(Rational(1, 3)));
}

TEST_CASE("pruning to the full tree changes nothing") {
  auto labels = std::make_shared<ExplicitLabels>(std::map<BitWord, Rational>{{bw("0"), Rational(1, 4)}}, Rational(3, 4));
  auto a = offspring_build(TreePresentation::full(), labels);
  auto p = offspring_prune(*a, TreePresentation::full());
  for (const char* s : {"", "0", "01", "0010", "1", "110"})
    CHECK(p->local_bounds(bw(s), 4) == a->local_bounds(bw(s), 4));
}

TEST_CASE("canonical approximation lies in the node intervals") {
  auto c = FunctionPresentation::interval(Rational(1, 4), Rational(3, 4));
  CanonicalApprox phi(c);
  for (const NatWord& u : {NatWord{}, NatWord{0}, NatWord{1, 2}, NatWord{3, 0, 1}})
    CHECK(c.interval_at(u).contains(phi.at(u)));
  ApproxPair pair(phi);
  CHECK(pair.minus(NatWord{}) < pair.plus(NatWord{}));
}
