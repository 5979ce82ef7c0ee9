#include <doctest.h>

#include "cantor/errors.hpp"
#include "cantor/setspec.hpp"

using namespace cantor;
using nlohmann::json;

namespace {
RatInterval root(const json& spec) { return load_set(spec)->local_bounds(BitWord{}, 6); }
}  // namespace

TEST_CASE("set specs load") {
  CHECK(root({{"kind", "clopen"}, {"words", {"0", "11"}}}) == RatInterval::point(Rational(3, 4)));
  CHECK(root({{"kind", "dualistic"}, {"measure", "5/8"}}) == RatInterval::point(Rational(5, 8)));
  CHECK(root({{"kind", "complement"}, {"of", {{"kind", "dualistic"}, {"measure", "1/3"}}}}) ==
        RatInterval::point(Rational(2, 3)));
  json parts = json::array({json{{"prefix", "0"}, {"set", {{"kind", "clopen"}, {"words", {""}}}}}});
  CHECK(root({{"kind", "compose"}, {"parts", parts}}) == RatInterval::point(Rational(1, 2)));
  auto off = root({{"kind", "offspring"}, {"tree", "full"}, {"labels", json::object()}, {"default_label", "1/2"}});
  CHECK(off.contains(Rational(1, 2)));
  CHECK_NOTHROW(load_set({{"kind", "reduction"}, {"which", "second"}, {"tree", "zeros"}}));
  CHECK_NOTHROW(load_set({{"kind", "solid-analytic"},
                          {"function", {{"preset", "interval"}, {"a", "1/4"}, {"b", "3/4"}}},
                          {"q", "dyadics"}}));
}

TEST_CASE("malformed specs are spec errors") {
  CHECK_THROWS_AS(load_set(json{{"kind", "nonsense"}}), SpecError);
  CHECK_THROWS_AS(load_set(json{{"kind", "dualistic"}}), SpecError);
  CHECK_THROWS_AS(load_set(json{{"kind", "dualistic"}, {"measure", "one half"}}), SpecError);
  CHECK_THROWS_AS(load_set(json{{"kind", "clopen"}, {"words", {"012"}}}), SpecError);
  CHECK_THROWS_AS(load_set(json::array()), SpecError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/spec.json"), SpecError);
}

TEST_CASE("out of range values are domain errors") {
  CHECK_THROWS_AS(load_set(json{{"kind", "dualistic"}, {"measure", "3/2"}}), DomainError);
  CHECK_THROWS_AS(load_set(json{{"kind", "countable-range"}, {"values", {"1/2", "1/2"}}}), DomainError);
}
