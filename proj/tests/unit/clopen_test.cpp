#include <doctest.h>

#include "cantor/clopen.hpp"
#include "cantor/errors.hpp"

using namespace cantor;

namespace {
BitWord bw(const char* s) { return BitWord::parse(s); }
ClopenSet cs(std::initializer_list<const char*> words) {
  std::vector<BitWord> v;
  for (auto w : words) v.push_back(bw(w));
  return ClopenSet::from_words(std::move(v));
}
}  // namespace

TEST_CASE("measure of cylinder unions") {
  CHECK(cs({"01"}).measure() == Rational(1, 4));
  CHECK(cs({"0", "11"}).measure() == Rational(3, 4));
  CHECK(ClopenSet::empty().measure() == 0);
}

TEST_CASE("boolean operations normalize") {
  CHECK(set_complement(cs({"0"})) == cs({"1"}));
  CHECK(set_union(cs({"00"}), cs({"01"})).words() == std::vector<BitWord>{bw("0")});
  auto c = concat(bw("1"), cs({"0"}));
  CHECK(c == cs({"10"}));
  CHECK(c.measure() == Rational(1, 4));
  CHECK(set_intersection(cs({"0"}), cs({"01", "1"})) == cs({"01"}));
}

TEST_CASE("localization") {
  CHECK(localize(cs({"0", "11"}), bw("1")) == cs({"1"}));
  CHECK(localize(cs({"0", "11"}), BitWord{}) == cs({"0", "11"}));
  CHECK(localize(cs({"0"}), bw("1")).is_empty());
}

TEST_CASE("canonical sets of dyadic measure") {
  CHECK(canonical_of_measure(Rational(3, 4)) == cs({"0", "10"}));
  CHECK(canonical_of_measure(1).is_full());
  CHECK(canonical_of_measure(Rational(1, 2)) == cs({"0"}));
  CHECK_THROWS_AS(canonical_of_measure(Rational(5, 4)), DomainError);
}

TEST_CASE("subsets of prescribed measure") {
  auto u = cs({"0", "10"});
  auto v = subset_of_measure(u, Rational(1, 2));
  CHECK(v == cs({"0"}));
  CHECK(is_subset(v, u));
  auto quarter = subset_of_measure(ClopenSet::full(), Rational(1, 4));
  CHECK(quarter.measure() == Rational(1, 4));
  CHECK(quarter == canonical_of_measure(Rational(1, 4)));
  CHECK_THROWS_AS(subset_of_measure(u, Rational(7, 8)), DomainError);
}
