#include <doctest.h>

#include "cantor/errors.hpp"
#include "cantor/reduce.hpp"

using namespace cantor;

namespace {
BitWord bw(const char* s) { return BitWord::parse(s); }
Rational checked(const OffspringPtr& a, const char* t) { return a->labels()->label(bw(t)); }
}  // namespace

TEST_CASE("second reduction labels") {
  SecondReductionLabels phi;
  CHECK(phi.label(BitWord{}) == Rational(1, 2));
  CHECK(phi.label(bw("1")) == Rational(1, 4));
  CHECK(phi.label(bw("11")) == Rational(7, 8));
  CHECK(phi.label(bw("01")) + phi.label(bw("00")) == 1);
}

TEST_CASE("second reduction densities") {
  auto a = second_reduction(TreePresentation::full());
  auto c = classify(*a, Branch::stretch(Lasso::ones()), Rational(1, 256), triangular(12), kDefaultBudget);
  CHECK(c.verdict == PointClassification::Verdict::blurry);
  CHECK(c.osc_lower >= 1 - Rational(1, 16));

  auto z = second_reduction(TreePresentation::zeros());
  auto d = classify(*z, Branch::stretch(Lasso::zeros()), Rational(1, 64), 120, kDefaultBudget);
  CHECK(d.verdict == PointClassification::Verdict::converges);
  CHECK(d.value.hi == 1);
}

TEST_CASE("first reduction labels follow the parity of the zero tail") {
  auto a = first_reduction(FunctionPresentation::constant(Rational(1, 2)), TreePresentation::full());
  CHECK(checked(a, "1") == Rational(3, 8));
  CHECK(checked(a, "10") == Rational(5, 8));
  auto c = classify(*a, Branch::stretch(Lasso::zeros()), Rational(1, 256), 120, kDefaultBudget);
  CHECK(c.verdict == PointClassification::Verdict::blurry);
  CHECK(c.osc_lower > Rational(1, 4));
}

TEST_CASE("third reduction labels") {
  auto c = FunctionPresentation::interval(Rational(1, 4), Rational(3, 4));
  ThirdReductionLabels psi(c);
  CHECK(psi.label(bw("11")) == psi.phi().plus(NatWord{0}));
  CHECK(psi.label(bw("110")) == psi.phi().phi(NatWord{0, 0}));
  CHECK(psi.label(bw("111")) == psi.phi().phi(NatWord{0, 0}));
}

TEST_CASE("third reduction accepts the shipped presets") {
  for (const auto& c : FunctionPresentation::shipped()) CHECK_NOTHROW(third_reduction(c, TreePresentation::full()));
}

TEST_CASE("solid analytic labels pick the first dyadic") {
  auto a = solid_analytic(FunctionPresentation::interval(Rational(1, 4), Rational(3, 4)), QEnumeration::dyadics());
  CHECK(checked(a, "") == Rational(1, 2));
  CHECK(checked(a, "000") == Rational(1, 2));
  CHECK_THROWS_AS(solid_analytic(FunctionPresentation::interval(Rational(1, 4), Rational(3, 4)),
                                 QEnumeration::list({Rational(1, 8)})),
                  DomainError);
}

TEST_CASE("solid injective labels are distinct") {
  auto b = solid_injective(FunctionPresentation::injective(Rational(1, 8)), {Rational(1, 2), Rational(1, 16)});
  CHECK(b.distinct);
  std::set<Rational> seen;
  for (const auto& [u, v] : b.labels) CHECK(seen.insert(v).second);
  REQUIRE(b.leftovers.size() == 1);
  CHECK(b.leftovers[0] == Rational(1, 16));
  bool found = false;
  for (const auto& d : b.oracle->designated()) found = found || d.density == RatInterval::point(Rational(1, 16));
  CHECK(found);
}

TEST_CASE("uniformity with the full product tree does not prune") {
  auto c = FunctionPresentation::constant(Rational(1, 2));
  auto u = uniformity_pipeline(ProductTreePresentation::full(3), Lasso(bw("101"), bw("0")), c, 4);
  auto h = third_reduction(c, TreePresentation::full());
  for (const char* s : {"", "1", "0110", "1011001"}) CHECK(u->local_bounds(bw(s), 3) == h->local_bounds(bw(s), 3));
}
