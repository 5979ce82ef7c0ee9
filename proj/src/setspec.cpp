#include "cantor/setspec.hpp"

#include <fstream>
#include <sstream>

#include "cantor/construct.hpp"
#include "cantor/errors.hpp"
#include "cantor/reduce.hpp"

namespace cantor {

using nlohmann::json;

namespace {

const json& need(const json& j, const char* key) {
  if (!j.contains(key)) throw SpecError(std::string("set spec is missing \"") + key + "\"");
  return j[key];
}

Rational rational_of(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw SpecError("expected a rational string, got " + v.dump());
}

std::vector<Rational> rationals_of(const json& v) {
  if (!v.is_array()) throw SpecError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& r : v) out.push_back(rational_of(r));
  return out;
}

Variant variant_of(const json& j) {
  if (!j.contains("variant")) return Variant::closed;
  if (!j["variant"].is_string()) throw SpecError("\"variant\" must be a string");
  return parse_variant(j["variant"].get<std::string>());
}

std::size_t size_of(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_unsigned()) throw SpecError(std::string("\"") + key + "\" must be a non-negative integer");
  return j[key].get<std::size_t>();
}

OraclePtr load_kind(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw SpecError("set spec must be an object with a string \"kind\"");
  auto kind = j["kind"].get<std::string>();

  if (kind == "clopen") {
    const auto& words = need(j, "words");
    if (!words.is_array()) throw SpecError("\"words\" must be an array");
    std::vector<BitWord> ws;
    for (const auto& w : words) {
      if (!w.is_string()) throw SpecError("clopen words must be strings of 0/1");
      ws.push_back(BitWord::parse(w.get<std::string>()));
    }
    return from_clopen(ClopenSet::from_words(std::move(ws)));
  }
  if (kind == "dualistic") return dualistic_of_measure(rational_of(need(j, "measure")));
  if (kind == "countable-range") return solid_countable_range(rationals_of(need(j, "values")));
  if (kind == "offspring") {
    auto tree = load_tree(need(j, "tree"));
    auto a = offspring_build(tree, ExplicitLabels::from_json(j), variant_of(j));
    if (j.contains("prune")) return offspring_prune(*a, load_tree(j["prune"]));
    return a;
  }
  if (kind == "reduction") {
    const auto& which = need(j, "which");
    if (!which.is_string()) throw SpecError("\"which\" must be a string");
    auto w = which.get<std::string>();
    auto tree = load_tree(need(j, "tree"));
    if (w == "second") return second_reduction(tree, variant_of(j));
    auto c = FunctionPresentation::from_json(need(j, "function"));
    if (w == "first") return first_reduction(c, tree, variant_of(j));
    if (w == "third") return third_reduction(c, tree, variant_of(j));
    throw SpecError("\"which\" must be first, second or third, got \"" + w + "\"");
  }
  if (kind == "solid-analytic") {
    auto c = FunctionPresentation::from_json(need(j, "function"));
    QEnumeration q = QEnumeration::dyadics();
    if (j.contains("q") && !(j["q"].is_string() && j["q"].get<std::string>() == "dyadics"))
      q = QEnumeration::list(rationals_of(j["q"]));
    return solid_analytic(c, q, variant_of(j));
  }
  if (kind == "solid-injective") {
    auto c = FunctionPresentation::from_json(need(j, "function"));
    return solid_injective(c, rationals_of(need(j, "q")), size_of(j, "depth", 3), size_of(j, "width", 3)).oracle;
  }
  if (kind == "uniformity") {
    auto pt = ProductTreePresentation::from_json(need(j, "product_tree"));
    auto c = FunctionPresentation::from_json(need(j, "function"));
    return uniformity_pipeline(pt, Branch::from_json(need(j, "z")), c, size_of(j, "depth", 8));
  }
  if (kind == "compose") {
    const auto& parts = need(j, "parts");
    if (!parts.is_array()) throw SpecError("\"parts\" must be an array");
    std::vector<Part> ps;
    for (const auto& p : parts) {
      const auto& prefix = need(p, "prefix");
      if (!prefix.is_string()) throw SpecError("part prefix must be a string of 0/1");
      ps.push_back({BitWord::parse(prefix.get<std::string>()), load_kind(need(p, "set"))});
    }
    bool complemented = j.contains("complemented") && j["complemented"].is_boolean() && j["complemented"].get<bool>();
    return compose(std::move(ps), complemented);
  }
  if (kind == "complement") return complement_of(load_kind(need(j, "of")));
  throw SpecError("unknown set kind \"" + kind + "\"");
}

}  // namespace

TreePresentation load_tree(const json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "full") return TreePresentation::full();
    if (s == "zeros") return TreePresentation::zeros();
    throw SpecError("unknown tree name \"" + s + "\"");
  }
  return TreePresentation::from_json(j);
}

OraclePtr load_set(const json& spec) {
  try {
    return load_kind(spec);
  } catch (const json::exception& e) {
    throw SpecError(e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open \"" + path + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    throw SpecError("\"" + path + "\": " + e.what());
  }
}

}  // namespace cantor
