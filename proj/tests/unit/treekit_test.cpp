#include <doctest.h>

#include "cantor/errors.hpp"
#include "cantor/treekit.hpp"

using namespace cantor;

namespace {
BitWord bw(const char* s) { return BitWord::parse(s); }

TreePresentation root_only(Policy p) { return TreePresentation::explicit_tree({BitWord{}}, {{BitWord{}, p}}); }

// ↓{⟨0⟩, ⟨1⟩} with the given leaf policies.
TreePresentation two_leaves(Policy left, Policy right) {
  return TreePresentation::explicit_tree({BitWord{}, bw("0"), bw("1")}, {{bw("0"), left}, {bw("1"), right}});
}

ProductTreePresentation diagonal() {
  return ProductTreePresentation(2, {Tuple{BitWord{}, BitWord{}}},
                                 {{Tuple{BitWord{}, BitWord{}}, {ComponentPolicy::copy(1), {Policy::full(), -1}}}});
}
}  // namespace

TEST_CASE("membership under leaf policies") {
  auto z = root_only(Policy::zeros());
  CHECK(z.member(bw("000")));
  CHECK_FALSE(z.member(bw("01")));
  auto f = root_only(Policy::full());
  CHECK(f.member(bw("0110101")));
  auto p = root_only(Policy::periodic(bw("10")));
  CHECK(p.member(bw("1010")));
  CHECK_FALSE(p.member(bw("11")));
}

TEST_CASE("presentations must be downward closed") {
  CHECK_THROWS(TreePresentation::explicit_tree({BitWord{}, bw("01")}, {{bw("01"), Policy::zeros()}}));
}

TEST_CASE("census of branches with infinitely many ones") {
  CHECK(two_leaves(Policy::zeros(), Policy::zeros()).census_N() == Cardinality::finite(0));
  CHECK(two_leaves(Policy::zeros(), Policy::periodic(bw("1"))).census_N() == Cardinality::finite(1));
  CHECK(two_leaves(Policy::zeros(), Policy::full()).census_N() == Cardinality::continuum());
}

TEST_CASE("explode") {
  auto z = root_only(Policy::zeros());
  auto e = explode(z, 8);
  for (std::size_t n = 0; n <= 8; ++n) CHECK(e.member(BitWord::constant(n, 0)));
  CHECK_FALSE(e.member(bw("01")));
  CHECK(e.census_N() == Cardinality::finite(0));

  // ⟨1⟩⌢1^ω explodes into nodes that insert 0-blocks after each 1.
  auto ones = root_only(Policy::periodic(bw("1")));
  auto eo = explode(ones, 6);
  CHECK(eo.member(bw("11")));
  CHECK(eo.member(bw("1001")));
  for (std::size_t n = 0; n <= 6; ++n) CHECK(eo.member(bw("111111").prefix(n)));
}

TEST_CASE("interleave and graft") {
  auto ff = tree_interleave(TreePresentation::full(), TreePresentation::full());
  CHECK(ff.member(bw("0110")));
  auto zf = tree_interleave(TreePresentation::zeros(), TreePresentation::full());
  CHECK(zf.member(bw("0101")));
  CHECK_FALSE(zf.member(bw("1")));
  CHECK_FALSE(zf.member(bw("0010")));

  auto g = graft(TreePresentation::zeros(), TreePresentation::full());
  CHECK(g.member(bw("000")));
  CHECK_FALSE(g.member(bw("01")));
  CHECK(g.member(bw("1011")));
  CHECK(g.census_N() == Cardinality::continuum());
  auto t = two_leaves(Policy::zeros(), Policy::periodic(bw("1")));
  CHECK(graft(t, t).census_N() == Cardinality::finite(2));
}

TEST_CASE("level statistic") {
  for (std::size_t n = 0; n < 6; ++n) {
    CHECK(level_stat(TreePresentation::full(), n) == 1);
    CHECK(level_stat(TreePresentation::zeros(), n) == Rational(1, 1 << n));
  }
  auto t = two_leaves(Policy::periodic(bw("01")), Policy::full());
  for (std::size_t n = 0; n < 8; ++n) CHECK(level_stat(t, n + 1) <= level_stat(t, n));
}

TEST_CASE("sections of product trees") {
  auto full = section_tree(ProductTreePresentation::full(2), bw("0101"), 4);
  CHECK(full.member(bw("1101")));
  auto d = section_tree(diagonal(), bw("00000"), 5);
  CHECK(d.member(bw("0000")));
  CHECK_FALSE(d.member(bw("01")));
}

TEST_CASE("star of a nat tree") {
  NatTreePresentation terminal({NatWord{}}, {{NatWord{}, NatPolicy{}}});
  auto s = star(terminal, 6);
  CHECK(s.member(bw("00000")));
  CHECK_FALSE(s.member(bw("1")));

  NatTreePresentation fan({NatWord{}}, {{NatWord{}, NatPolicy{NatPolicy::Kind::fan, {}}}});
  auto f = star(fan, 8);
  CHECK(f.member(bw("0001000")));
  CHECK(f.member(bw("1000")));
  CHECK_FALSE(f.member(bw("0101")));
}
