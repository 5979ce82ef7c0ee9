#include "cantor/treekit.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "cantor/errors.hpp"

namespace cantor {

using nlohmann::json;

Policy Policy::periodic(BitWord w) {
  if (w.empty()) throw DomainError("periodic policy needs a nonempty word");
  return {Kind::periodic, std::move(w)};
}

bool Policy::allows(const BitWord& e) const {
  switch (kind) {
    case Kind::full:
      return true;
    case Kind::zeros:
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) return false;
      return true;
    case Kind::periodic:
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != period[i % period.size()]) return false;
      return true;
  }
  return false;
}

Policy Policy::after(std::size_t consumed) const {
  if (kind != Kind::periodic) return *this;
  std::size_t k = consumed % period.size();
  return {Kind::periodic, period.drop(k) + period.prefix(k)};
}

json Policy::to_json() const {
  switch (kind) {
    case Kind::zeros:
      return "zeros";
    case Kind::full:
      return "full";
    case Kind::periodic:
      return json{{"periodic", period.str()}};
  }
  return nullptr;
}

Policy Policy::from_json(const json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "zeros") return zeros();
    if (s == "full") return full();
    throw SpecError("unknown leaf policy \"" + s + "\"");
  }
  if (j.is_object() && j.contains("periodic") && j["periodic"].is_string()) {
    auto w = BitWord::parse(j["periodic"].get<std::string>());
    if (w.empty()) throw SpecError("periodic policy needs a nonempty word");
    return periodic(std::move(w));
  }
  throw SpecError("leaf policy must be \"zeros\", \"full\" or {\"periodic\": word}");
}

namespace {

Lasso tail_of(const Policy& p) {
  if (p.kind == Policy::Kind::periodic) return Lasso(BitWord{}, p.period);
  return Lasso::zeros();
}

}  // namespace

std::string Cardinality::str() const {
  switch (kind) {
    case CardKind::finite:
      return std::to_string(count);
    case CardKind::countable:
      return "countable";
    case CardKind::continuum:
      return "continuum";
  }
  return "";
}

Cardinality operator+(const Cardinality& a, const Cardinality& b) {
  if (a.kind == CardKind::continuum || b.kind == CardKind::continuum) return Cardinality::continuum();
  if (a.kind == CardKind::countable || b.kind == CardKind::countable) return {CardKind::countable, 0};
  return Cardinality::finite(a.count + b.count);
}

// Explicit presentations.

namespace {

class ExplicitTree final : public TreeImpl {
 public:
  ExplicitTree(std::set<BitWord> nodes, std::map<BitWord, Policy> policies)
      : nodes_(std::move(nodes)), policies_(std::move(policies)) {
    if (!nodes_.count(BitWord{})) throw DomainError("tree presentation must contain the empty word");
    for (const auto& s : nodes_) {
      if (!s.empty() && !nodes_.count(s.prefix(s.size() - 1)))
        throw DomainError("tree presentation is not downward closed at \"" + s.str() + "\"");
      bool leaf = !nodes_.count(s.append(0)) && !nodes_.count(s.append(1));
      if (leaf && !policies_.count(s)) throw DomainError("leaf \"" + s.str() + "\" has no policy");
      depth_ = std::max(depth_, s.size());
    }
    for (const auto& [w, p] : policies_) {
      if (!nodes_.count(w) || nodes_.count(w.append(0)) || nodes_.count(w.append(1)))
        throw DomainError("policy given for \"" + w.str() + "\", which is not a leaf");
    }
    // full subtrees, deepest first
    std::vector<BitWord> order(nodes_.begin(), nodes_.end());
    std::sort(order.begin(), order.end(), [](const BitWord& a, const BitWord& b) { return a.size() > b.size(); });
    for (const auto& s : order) {
      auto it = policies_.find(s);
      if (it != policies_.end()) {
        if (it->second.kind == Policy::Kind::full) full_.insert(s);
      } else if (full_.count(s.append(0)) && full_.count(s.append(1))) {
        full_.insert(s);
      }
    }
  }

  bool member(const BitWord& s) const override {
    if (nodes_.count(s)) return true;
    auto leaf = leaf_below(s);
    return leaf && policies_.at(*leaf).allows(s.drop(leaf->size()));
  }

  bool full_below(const BitWord& s) const override {
    if (nodes_.count(s)) return full_.count(s) > 0;
    auto leaf = leaf_below(s);
    return leaf && policies_.at(*leaf).kind == Policy::Kind::full;
  }

  std::optional<Lasso> continuation(const BitWord& s) const override {
    if (nodes_.count(s)) {
      BitWord cur = s;
      while (!policies_.count(cur)) cur = nodes_.count(cur.append(0)) ? cur.append(0) : cur.append(1);
      return tail_of(policies_.at(cur)).prepend(cur);
    }
    auto leaf = leaf_below(s);
    if (!leaf) return std::nullopt;
    const auto& p = policies_.at(*leaf);
    if (!p.allows(s.drop(leaf->size()))) return std::nullopt;
    return tail_of(p.after(s.size() - leaf->size())).prepend(s);
  }

  std::optional<bool> contains_branch(const Lasso& z) const override {
    BitWord cur;
    while (!policies_.count(cur)) {
      cur = cur.append(z.bit_at(cur.size()));
      if (!nodes_.count(cur)) return false;
    }
    const auto& p = policies_.at(cur);
    if (p.kind == Policy::Kind::full) return true;
    return z.drop(cur.size()) == tail_of(p);
  }

  const std::set<BitWord>& nodes() const { return nodes_; }
  const std::map<BitWord, Policy>& policies() const { return policies_; }
  std::size_t depth() const { return depth_; }

 private:
  // The explicit leaf that is a proper prefix of s, if s leaves the explicit part at a leaf.
  std::optional<BitWord> leaf_below(const BitWord& s) const {
    for (std::size_t n = std::min(s.size(), depth_);; --n) {
      auto p = s.prefix(n);
      if (nodes_.count(p)) {
        if (policies_.count(p)) return p;
        return std::nullopt;
      }
      if (n == 0) return std::nullopt;
    }
  }

  std::set<BitWord> nodes_;
  std::map<BitWord, Policy> policies_;
  std::set<BitWord> full_;
  std::size_t depth_ = 0;
};

const ExplicitTree* as_explicit(const TreeImpl& impl) { return dynamic_cast<const ExplicitTree*>(&impl); }

const ExplicitTree& require_explicit(const TreeImpl& impl, const char* what) {
  auto* e = as_explicit(impl);
  if (!e) throw DomainError(std::string(what) + " needs an explicit tree presentation");
  return *e;
}

// E₂(T): bits are read in t-mode; a 1 read in t-mode opens an inserted block 0^m 1.
class ExplodedTree final : public TreeImpl {
 public:
  explicit ExplodedTree(TreePresentation t) : t_(std::move(t)) {}

  bool member(const BitWord& s) const override { return t_.member(exploded_t_part(s)); }
  bool full_below(const BitWord& s) const override { return t_.full_below(exploded_t_part(s)); }

  std::optional<Lasso> continuation(const BitWord& s) const override {
    BitWord tpart;
    bool inserting = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (inserting) {
        if (s[i]) inserting = false;
      } else {
        tpart = tpart.append(s[i]);
        if (s[i]) inserting = true;
      }
    }
    auto x = t_.continuation(tpart);
    if (!x) return std::nullopt;
    Lasso rest = x->drop(tpart.size());
    BitWord head = s;
    if (inserting) head = head.append(1);
    return Lasso(head + doubled(rest.head()), doubled(rest.period()));
  }

 private:
  static BitWord doubled(const BitWord& w) {
    std::vector<std::uint8_t> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      out.push_back(static_cast<std::uint8_t>(w[i]));
      if (w[i]) out.push_back(1);
    }
    return BitWord(std::move(out));
  }

  TreePresentation t_;
};

std::pair<BitWord, BitWord> split_parity(const BitWord& s) {
  std::vector<std::uint8_t> ev, od;
  for (std::size_t i = 0; i < s.size(); ++i) (i % 2 ? od : ev).push_back(static_cast<std::uint8_t>(s[i]));
  return {BitWord(std::move(ev)), BitWord(std::move(od))};
}

class InterleavedTree final : public TreeImpl {
 public:
  InterleavedTree(TreePresentation t, TreePresentation v) : t_(std::move(t)), v_(std::move(v)) {}

  bool member(const BitWord& s) const override {
    auto [e, o] = split_parity(s);
    return t_.member(e) && v_.member(o);
  }
  bool full_below(const BitWord& s) const override {
    auto [e, o] = split_parity(s);
    return t_.full_below(e) && v_.full_below(o);
  }
  std::optional<Lasso> continuation(const BitWord& s) const override {
    auto [e, o] = split_parity(s);
    auto x = t_.continuation(e);
    auto y = v_.continuation(o);
    if (!x || !y) return std::nullopt;
    return interleave(*x, *y);
  }
  std::optional<bool> contains_branch(const Lasso& z) const override {
    auto [x, y] = deinterleave(z);
    auto a = t_.contains_branch(x);
    if (a && !*a) return false;
    auto b = v_.contains_branch(y);
    if (b && !*b) return false;
    if (a && b) return true;
    return std::nullopt;
  }

 private:
  TreePresentation t_, v_;
};

class GraftTree final : public TreeImpl {
 public:
  GraftTree(TreePresentation l, TreePresentation r) : l_(std::move(l)), r_(std::move(r)) {}

  bool member(const BitWord& s) const override { return s.empty() || side(s[0]).member(s.drop(1)); }
  bool full_below(const BitWord& s) const override {
    if (s.empty()) return l_.full_below(s) && r_.full_below(s);
    return side(s[0]).full_below(s.drop(1));
  }
  std::optional<Lasso> continuation(const BitWord& s) const override {
    int b = s.empty() ? 0 : s[0];
    auto x = side(b).continuation(s.drop(1));
    if (!x) return std::nullopt;
    return x->prepend(BitWord{b});
  }
  std::optional<bool> contains_branch(const Lasso& z) const override {
    return side(z.bit_at(0)).contains_branch(z.drop(1));
  }

 private:
  const TreePresentation& side(int b) const { return b ? r_ : l_; }
  TreePresentation l_, r_;
};

class PairInterleavedTree final : public TreeImpl {
 public:
  explicit PairInterleavedTree(ProductTreePresentation p) : p_(std::move(p)) {
    if (p_.arity() != 2) throw DomainError("pair interleaving needs a product tree of arity 2");
  }

  bool member(const BitWord& s) const override { return completion(s).has_value(); }

  bool full_below(const BitWord& s) const override {
    auto [e, o] = split_parity(s);
    if (e.size() == o.size()) return p_.full_below({e, o});
    return p_.full_below({e, o.append(0)}) && p_.full_below({e, o.append(1)});
  }

  std::optional<Lasso> continuation(const BitWord& s) const override {
    auto pair = completion(s);
    if (!pair) return std::nullopt;
    auto z = p_.continuation(*pair);
    return interleave(z[0], z[1]);
  }

 private:
  std::optional<Tuple> completion(const BitWord& s) const {
    auto [e, o] = split_parity(s);
    if (e.size() == o.size()) {
      if (p_.member({e, o})) return Tuple{e, o};
      return std::nullopt;
    }
    for (int j = 0; j < 2; ++j)
      if (p_.member({e, o.append(j)})) return Tuple{e, o.append(j)};
    return std::nullopt;
  }

  ProductTreePresentation p_;
};

}  // namespace

TreePresentation TreePresentation::explicit_tree(std::set<BitWord> nodes, std::map<BitWord, Policy> policies) {
  return TreePresentation(std::make_shared<ExplicitTree>(std::move(nodes), std::move(policies)));
}

TreePresentation TreePresentation::full() { return explicit_tree({BitWord{}}, {{BitWord{}, Policy::full()}}); }

TreePresentation TreePresentation::zeros() { return explicit_tree({BitWord{}}, {{BitWord{}, Policy::zeros()}}); }

TreePresentation TreePresentation::branch(const Lasso& z) {
  std::set<BitWord> nodes;
  for (std::size_t n = 0; n <= z.head().size(); ++n) nodes.insert(z.head().prefix(n));
  Policy p = z.period() == BitWord{0} ? Policy::zeros() : Policy::periodic(z.period());
  return explicit_tree(std::move(nodes), {{z.head(), p}});
}

TreePresentation TreePresentation::from_json(const json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array())
    throw SpecError("tree presentation needs a \"nodes\" array");
  std::set<BitWord> nodes;
  for (const auto& n : j["nodes"]) {
    if (!n.is_string()) throw SpecError("tree nodes must be strings of 0/1");
    nodes.insert(BitWord::parse(n.get<std::string>()));
  }
  std::map<BitWord, Policy> policies;
  if (j.contains("policies")) {
    if (!j["policies"].is_object()) throw SpecError("\"policies\" must be an object");
    for (const auto& [k, v] : j["policies"].items()) policies[BitWord::parse(k)] = Policy::from_json(v);
  }
  try {
    return explicit_tree(std::move(nodes), std::move(policies));
  } catch (const DomainError& e) {
    throw SpecError(e.what());
  }
}

json TreePresentation::to_json() const {
  const auto& e = require_explicit(*impl_, "serialization");
  json nodes = json::array();
  for (const auto& s : e.nodes()) nodes.push_back(s.str());
  json policies = json::object();
  for (const auto& [w, p] : e.policies()) policies[w.str()] = p.to_json();
  return json{{"nodes", nodes}, {"policies", policies}};
}

bool TreePresentation::member(const BitWord& s) const { return impl_->member(s); }
bool TreePresentation::full_below(const BitWord& s) const { return impl_->full_below(s); }
std::optional<Lasso> TreePresentation::continuation(const BitWord& s) const { return impl_->continuation(s); }
std::optional<bool> TreePresentation::contains_branch(const Lasso& z) const { return impl_->contains_branch(z); }

bool TreePresentation::is_explicit() const { return as_explicit(*impl_) != nullptr; }

const std::set<BitWord>& TreePresentation::explicit_nodes() const {
  return require_explicit(*impl_, "explicit_nodes").nodes();
}

const std::map<BitWord, Policy>& TreePresentation::leaf_policies() const {
  return require_explicit(*impl_, "leaf_policies").policies();
}

std::size_t TreePresentation::explicit_depth() const { return require_explicit(*impl_, "explicit_depth").depth(); }

Cardinality TreePresentation::census_N() const {
  Cardinality total = Cardinality::finite(0);
  for (const auto& [w, p] : require_explicit(*impl_, "census").policies()) {
    if (p.kind == Policy::Kind::full) return Cardinality::continuum();
    if (p.kind == Policy::Kind::periodic && ones_count(p.period).ell > 0) total = total + Cardinality::finite(1);
  }
  return total;
}

BitWord exploded_t_part(const BitWord& s) {
  std::vector<std::uint8_t> out;
  bool inserting = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (inserting) {
      if (s[i]) inserting = false;
    } else {
      out.push_back(static_cast<std::uint8_t>(s[i]));
      if (s[i]) inserting = true;
    }
  }
  return BitWord(std::move(out));
}

TreePresentation exploded(const TreePresentation& t) { return TreePresentation(std::make_shared<ExplodedTree>(t)); }

TreePresentation explode(const TreePresentation& t, std::size_t depth) { return materialize(exploded(t), depth); }

TreePresentation tree_interleave(const TreePresentation& t, const TreePresentation& v) {
  return TreePresentation(std::make_shared<InterleavedTree>(t, v));
}

TreePresentation graft(const TreePresentation& left, const TreePresentation& right) {
  if (left.is_explicit() && right.is_explicit()) {
    std::set<BitWord> nodes{BitWord{}};
    std::map<BitWord, Policy> policies;
    for (int b = 0; b < 2; ++b) {
      const auto& side = b ? right : left;
      for (const auto& s : side.explicit_nodes()) nodes.insert(BitWord{b} + s);
      for (const auto& [w, p] : side.leaf_policies()) policies[BitWord{b} + w] = p;
    }
    return TreePresentation::explicit_tree(std::move(nodes), std::move(policies));
  }
  return TreePresentation(std::make_shared<GraftTree>(left, right));
}

TreePresentation materialize(const TreePresentation& t, std::size_t depth) {
  if (!t.member(BitWord{})) throw DomainError("cannot materialize an empty tree");
  std::set<BitWord> nodes;
  std::map<BitWord, Policy> policies;
  std::deque<BitWord> queue{BitWord{}};
  while (!queue.empty()) {
    BitWord s = std::move(queue.front());
    queue.pop_front();
    nodes.insert(s);
    if (t.full_below(s)) {
      policies[s] = Policy::full();
      continue;
    }
    if (s.size() < depth) {
      bool any = false;
      for (int b = 0; b < 2; ++b)
        if (t.member(s.append(b))) {
          queue.push_back(s.append(b));
          any = true;
        }
      if (!any) throw DomainError("presented tree is not pruned at \"" + s.str() + "\"");
      continue;
    }
    auto x = t.continuation(s);
    if (!x) throw DomainError("no continuation known through \"" + s.str() + "\"");
    Lasso rest = x->drop(s.size());
    BitWord cur = s;
    for (std::size_t i = 0; i < rest.head().size(); ++i) {
      cur = cur.append(rest.head()[i]);
      nodes.insert(cur);
    }
    policies[cur] = rest.period() == BitWord{0} ? Policy::zeros() : Policy::periodic(rest.period());
  }
  return TreePresentation::explicit_tree(std::move(nodes), std::move(policies));
}

Rational level_stat(const TreePresentation& t, std::size_t n) {
  std::function<mpz_class(const BitWord&)> count = [&](const BitWord& s) -> mpz_class {
    if (t.full_below(s)) {
      mpz_class c;
      mpz_ui_pow_ui(c.get_mpz_t(), 2, n - s.size());
      return c;
    }
    if (s.size() == n) return 1;
    mpz_class c = 0;
    for (int b = 0; b < 2; ++b)
      if (t.member(s.append(b))) c += count(s.append(b));
    return c;
  };
  if (!t.member(BitWord{})) return 0;
  return Rational(count(BitWord{})) * pow2(-static_cast<long>(n));
}

// Trees on the naturals.

json NatPolicy::to_json() const {
  switch (kind) {
    case Kind::terminal:
      return "terminal";
    case Kind::zeros:
      return "zeros";
    case Kind::full:
      return "full";
    case Kind::fan:
      return "fan";
    case Kind::periodic:
      return json{{"periodic", period.str()}};
  }
  return nullptr;
}

NatPolicy NatPolicy::from_json(const json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "terminal") return {Kind::terminal, {}};
    if (s == "zeros") return {Kind::zeros, {}};
    if (s == "full") return {Kind::full, {}};
    if (s == "fan") return {Kind::fan, {}};
    throw SpecError("unknown policy \"" + s + "\" for a tree on the naturals");
  }
  if (j.is_object() && j.contains("periodic") && j["periodic"].is_string()) {
    auto w = NatWord::parse(j["periodic"].get<std::string>());
    if (w.empty()) throw SpecError("periodic policy needs a nonempty word");
    return {Kind::periodic, std::move(w)};
  }
  throw SpecError("bad policy for a tree on the naturals");
}

NatTreePresentation::NatTreePresentation(std::set<NatWord> nodes, std::map<NatWord, NatPolicy> policies)
    : nodes_(std::move(nodes)), policies_(std::move(policies)) {
  if (!nodes_.count(NatWord{})) throw DomainError("tree presentation must contain the empty word");
  for (const auto& u : nodes_)
    if (!u.empty() && !nodes_.count(u.prefix(u.size() - 1)))
      throw DomainError("tree presentation is not downward closed at \"" + u.str() + "\"");
  for (const auto& u : nodes_)
    if (is_leaf(u) && !policies_.count(u)) throw DomainError("leaf \"" + u.str() + "\" has no policy");
  for (const auto& [u, p] : policies_) {
    if (!nodes_.count(u) || !is_leaf(u)) throw DomainError("policy given for \"" + u.str() + "\", which is not a leaf");
    if (p.kind == NatPolicy::Kind::periodic && p.period.empty())
      throw DomainError("periodic policy needs a nonempty word");
  }
}

bool NatTreePresentation::is_leaf(const NatWord& u) const {
  auto it = nodes_.upper_bound(u);
  return it == nodes_.end() || !u.is_prefix_of(*it);
}

Cardinality NatTreePresentation::body_census() const {
  Cardinality total = Cardinality::finite(0);
  for (const auto& [u, p] : policies_) {
    if (p.kind == NatPolicy::Kind::full) return Cardinality::continuum();
    if (p.kind == NatPolicy::Kind::zeros || p.kind == NatPolicy::Kind::periodic)
      total = total + Cardinality::finite(1);
  }
  return total;
}

NatTreePresentation NatTreePresentation::from_json(const json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array())
    throw SpecError("tree presentation needs a \"nodes\" array");
  std::set<NatWord> nodes;
  for (const auto& n : j["nodes"]) {
    if (!n.is_string()) throw SpecError("nodes of a tree on the naturals are comma-separated strings");
    nodes.insert(NatWord::parse(n.get<std::string>()));
  }
  std::map<NatWord, NatPolicy> policies;
  if (j.contains("policies"))
    for (const auto& [k, v] : j["policies"].items()) policies[NatWord::parse(k)] = NatPolicy::from_json(v);
  try {
    return NatTreePresentation(std::move(nodes), std::move(policies));
  } catch (const DomainError& e) {
    throw SpecError(e.what());
  }
}

json NatTreePresentation::to_json() const {
  json nodes = json::array();
  for (const auto& u : nodes_) nodes.push_back(u.str());
  json policies = json::object();
  for (const auto& [u, p] : policies_) policies[u.str()] = p.to_json();
  return json{{"nodes", nodes}, {"policies", policies}};
}

TreePresentation star(const NatTreePresentation& u, std::size_t depth) {
  std::set<BitWord> nodes{BitWord{}};
  std::map<BitWord, Policy> policies;
  auto add_path = [&](const BitWord& w) {
    for (std::size_t n = 0; n <= w.size(); ++n) nodes.insert(w.prefix(n));
  };
  for (const auto& v : u.nodes()) add_path(encode_check(v));
  for (const auto& [v, p] : u.policies()) {
    BitWord c = encode_check(v);
    switch (p.kind) {
      case NatPolicy::Kind::terminal:
        policies[c] = Policy::zeros();
        break;
      case NatPolicy::Kind::zeros:
        policies[c] = Policy::periodic(BitWord{1});
        break;
      case NatPolicy::Kind::periodic:
        policies[c] = Policy::periodic(encode_check(p.period));
        break;
      case NatPolicy::Kind::full:
        policies[c] = Policy::full();
        break;
      case NatPolicy::Kind::fan: {
        // children v⌢k, all terminal, up to the requested depth
        std::size_t spine = depth > c.size() ? depth - c.size() : 0;
        BitWord cur = c;
        for (std::size_t k = 0; k < spine; ++k) {
          BitWord child = cur.append(1);
          nodes.insert(child);
          policies[child] = Policy::zeros();
          cur = cur.append(0);
          nodes.insert(cur);
        }
        policies[cur] = Policy::zeros();
        break;
      }
    }
  }
  return TreePresentation::explicit_tree(std::move(nodes), std::move(policies));
}

// Trees on tuples of bits.

json ComponentPolicy::to_json() const {
  if (copy_of >= 0) return json{{"copy", copy_of}};
  return policy.to_json();
}

ComponentPolicy ComponentPolicy::from_json(const json& j) {
  if (j.is_object() && j.contains("copy")) {
    if (!j["copy"].is_number_integer()) throw SpecError("\"copy\" must name a component index");
    return copy(j["copy"].get<int>());
  }
  return {Policy::from_json(j), -1};
}

namespace {

std::string tuple_key(const Tuple& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += t[i].str();
  }
  return out;
}

Tuple tuple_prefix(const Tuple& t, std::size_t n) {
  Tuple out;
  for (const auto& w : t) out.push_back(w.prefix(n));
  return out;
}

Tuple tuple_append(const Tuple& t, unsigned mask) {
  Tuple out;
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back(t[i].append((mask >> i) & 1));
  return out;
}

std::size_t tuple_length(const Tuple& t) { return t.empty() ? 0 : t[0].size(); }

}  // namespace

ProductTreePresentation::ProductTreePresentation(std::size_t arity, std::set<Tuple> nodes,
                                                 std::map<Tuple, std::vector<ComponentPolicy>> policies)
    : arity_(arity), nodes_(std::move(nodes)), policies_(std::move(policies)) {
  if (arity_ == 0) throw DomainError("product tree needs arity at least 1");
  Tuple root(arity_);
  if (!nodes_.count(root)) throw DomainError("product tree must contain the empty tuple");
  for (const auto& t : nodes_) {
    if (t.size() != arity_) throw DomainError("product tree node of wrong arity: " + tuple_key(t));
    for (const auto& w : t)
      if (w.size() != t[0].size()) throw DomainError("product tree node with unequal lengths: " + tuple_key(t));
    std::size_t n = tuple_length(t);
    if (n > 0 && !nodes_.count(tuple_prefix(t, n - 1)))
      throw DomainError("product tree is not downward closed at " + tuple_key(t));
  }
  for (const auto& t : nodes_) {
    bool leaf = true;
    for (unsigned m = 0; m < (1u << arity_) && leaf; ++m) leaf = !nodes_.count(tuple_append(t, m));
    auto it = policies_.find(t);
    if (leaf && it == policies_.end()) throw DomainError("leaf " + tuple_key(t) + " has no policy");
    if (!leaf && it != policies_.end()) throw DomainError("policy given for " + tuple_key(t) + ", which is not a leaf");
  }
  for (const auto& [t, ps] : policies_) {
    if (!nodes_.count(t)) throw DomainError("policy given for " + tuple_key(t) + ", which is not a node");
    if (ps.size() != arity_) throw DomainError("leaf " + tuple_key(t) + " needs one policy per component");
    for (std::size_t i = 0; i < arity_; ++i) {
      // copy chains must end at a non-copy component
      std::size_t steps = 0;
      int j = static_cast<int>(i);
      while (ps[j].copy_of >= 0) {
        j = ps[j].copy_of;
        if (j >= static_cast<int>(arity_) || ++steps > arity_)
          throw DomainError("bad copy reference at leaf " + tuple_key(t));
      }
    }
  }
  std::vector<Tuple> order(nodes_.begin(), nodes_.end());
  std::sort(order.begin(), order.end(),
            [](const Tuple& a, const Tuple& b) { return tuple_length(a) > tuple_length(b); });
  for (const auto& t : order) {
    auto it = policies_.find(t);
    if (it != policies_.end()) {
      bool all = std::all_of(it->second.begin(), it->second.end(), [](const ComponentPolicy& c) {
        return c.copy_of < 0 && c.policy.kind == Policy::Kind::full;
      });
      if (all) full_subtrees_.insert(t);
      continue;
    }
    bool all = true;
    for (unsigned m = 0; m < (1u << arity_) && all; ++m) all = full_subtrees_.count(tuple_append(t, m)) > 0;
    if (all) full_subtrees_.insert(t);
  }
}

ProductTreePresentation ProductTreePresentation::full(std::size_t arity) {
  Tuple root(arity);
  return ProductTreePresentation(arity, {root}, {{root, std::vector<ComponentPolicy>(arity, {Policy::full(), -1})}});
}

std::size_t ProductTreePresentation::explicit_depth() const {
  std::size_t d = 0;
  for (const auto& t : nodes_) d = std::max(d, tuple_length(t));
  return d;
}

std::optional<Tuple> ProductTreePresentation::covering_leaf(const Tuple& t) const {
  std::size_t n = tuple_length(t);
  for (std::size_t k = std::min(n, explicit_depth());; --k) {
    auto p = tuple_prefix(t, k);
    if (nodes_.count(p)) {
      if (policies_.count(p)) return p;
      return std::nullopt;
    }
    if (k == 0) return std::nullopt;
  }
}

bool ProductTreePresentation::member(const Tuple& t) const {
  if (t.size() != arity_) throw DomainError("tuple of wrong arity: " + tuple_key(t));
  if (nodes_.count(t)) return true;
  for (const auto& w : t)
    if (w.size() != t[0].size()) return false;
  auto leaf = covering_leaf(t);
  if (!leaf) return false;
  const auto& ps = policies_.at(*leaf);
  std::size_t n = tuple_length(*leaf);
  for (std::size_t i = 0; i < arity_; ++i) {
    if (ps[i].copy_of >= 0) {
      if (t[i].drop(n) != t[ps[i].copy_of].drop(n)) return false;
    } else if (!ps[i].policy.allows(t[i].drop(n))) {
      return false;
    }
  }
  return true;
}

bool ProductTreePresentation::full_below(const Tuple& t) const {
  if (nodes_.count(t)) return full_subtrees_.count(t) > 0;
  auto leaf = covering_leaf(t);
  return leaf && full_subtrees_.count(*leaf) > 0;
}

std::vector<Lasso> ProductTreePresentation::leaf_tails(const Tuple& leaf, std::size_t consumed) const {
  const auto& ps = policies_.at(leaf);
  std::vector<Lasso> out(arity_);
  std::function<Lasso(std::size_t)> tail = [&](std::size_t i) -> Lasso {
    if (ps[i].copy_of >= 0) return tail(static_cast<std::size_t>(ps[i].copy_of));
    return tail_of(ps[i].policy.after(consumed));
  };
  for (std::size_t i = 0; i < arity_; ++i) out[i] = tail(i);
  return out;
}

std::vector<Lasso> ProductTreePresentation::continuation(const Tuple& t) const {
  if (!member(t)) throw DomainError("no branch through non-member " + tuple_key(t));
  Tuple cur = t;
  std::size_t consumed = 0;
  if (nodes_.count(cur)) {
    while (!policies_.count(cur)) {
      for (unsigned m = 0; m < (1u << arity_); ++m)
        if (nodes_.count(tuple_append(cur, m))) {
          cur = tuple_append(cur, m);
          break;
        }
    }
  } else {
    consumed = tuple_length(t) - tuple_length(*covering_leaf(t));
    cur = *covering_leaf(t);
  }
  auto tails = leaf_tails(cur, consumed);
  std::vector<Lasso> out;
  for (std::size_t i = 0; i < arity_; ++i) {
    BitWord start = consumed ? t[i] : cur[i];
    out.push_back(tails[i].prepend(start));
  }
  return out;
}

std::optional<bool> ProductTreePresentation::contains_branch(const std::vector<Lasso>& z) const {
  if (z.size() != arity_) throw DomainError("branch of wrong arity");
  Tuple cur(arity_);
  while (!policies_.count(cur)) {
    Tuple next;
    for (std::size_t i = 0; i < arity_; ++i) next.push_back(cur[i].append(z[i].bit_at(tuple_length(cur))));
    if (!nodes_.count(next)) return false;
    cur = std::move(next);
  }
  const auto& ps = policies_.at(cur);
  std::size_t n = tuple_length(cur);
  auto tails = leaf_tails(cur, 0);
  for (std::size_t i = 0; i < arity_; ++i) {
    if (ps[i].copy_of >= 0) {
      if (!(z[i].drop(n) == z[ps[i].copy_of].drop(n))) return false;
    } else if (ps[i].policy.kind != Policy::Kind::full && !(z[i].drop(n) == tails[i])) {
      return false;
    }
  }
  return true;
}

ProductTreePresentation ProductTreePresentation::from_json(const json& j) {
  if (!j.is_object() || !j.contains("arity") || !j.contains("nodes"))
    throw SpecError("product tree needs \"arity\" and \"nodes\"");
  auto arity = j["arity"].get<std::size_t>();
  std::set<Tuple> nodes;
  for (const auto& n : j["nodes"]) {
    if (!n.is_array()) throw SpecError("product tree nodes are arrays of bit strings");
    Tuple t;
    for (const auto& w : n) t.push_back(BitWord::parse(w.get<std::string>()));
    nodes.insert(std::move(t));
  }
  std::map<Tuple, std::vector<ComponentPolicy>> policies;
  if (j.contains("policies"))
    for (const auto& [k, v] : j["policies"].items()) {
      Tuple t;
      std::size_t start = 0;
      while (true) {
        auto pos = k.find(',', start);
        t.push_back(BitWord::parse(k.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
      }
      if (!v.is_array()) throw SpecError("product leaf policies are arrays");
      std::vector<ComponentPolicy> ps;
      for (const auto& c : v) ps.push_back(ComponentPolicy::from_json(c));
      policies[t] = std::move(ps);
    }
  try {
    return ProductTreePresentation(arity, std::move(nodes), std::move(policies));
  } catch (const DomainError& e) {
    throw SpecError(e.what());
  }
}

json ProductTreePresentation::to_json() const {
  json nodes = json::array();
  for (const auto& t : nodes_) {
    json n = json::array();
    for (const auto& w : t) n.push_back(w.str());
    nodes.push_back(n);
  }
  json policies = json::object();
  for (const auto& [t, ps] : policies_) {
    json v = json::array();
    for (const auto& c : ps) v.push_back(c.to_json());
    policies[tuple_key(t)] = v;
  }
  return json{{"arity", arity_}, {"nodes", nodes}, {"policies", policies}};
}

ProductTreePresentation section(const ProductTreePresentation& pt, const BitWord& z_prefix, std::size_t depth) {
  const std::size_t k = pt.arity();
  if (k < 2) throw DomainError("section needs a product tree of arity at least 2");
  const std::size_t d = std::max(depth, pt.explicit_depth());
  const std::size_t last = k - 1;
  std::vector<std::uint8_t> zbits(d, 0);
  for (std::size_t i = 0; i < std::min(d, z_prefix.size()); ++i) zbits[i] = static_cast<std::uint8_t>(z_prefix[i]);
  const BitWord z(std::move(zbits));

  auto with_z = [&](const Tuple& t) {
    Tuple full = t;
    full.push_back(z.prefix(tuple_length(t)));
    return full;
  };

  std::set<Tuple> nodes;
  std::map<Tuple, std::vector<ComponentPolicy>> policies;
  // depth-first, keeping only nodes that survive to depth d
  std::function<bool(const Tuple&)> explore = [&](const Tuple& t) -> bool {
    Tuple tz = with_z(t);
    if (!pt.member(tz)) return false;
    std::size_t n = tuple_length(t);
    if (pt.full_below(tz)) {
      nodes.insert(t);
      policies[t] = std::vector<ComponentPolicy>(last, {Policy::full(), -1});
      return true;
    }
    if (n == d) {
      // project the covering leaf's policies onto the remaining coordinates
      std::vector<ComponentPolicy> ps;
      const auto& lp = pt.policies();
      Tuple leaf = tz;
      while (!lp.count(leaf)) leaf = tuple_prefix(leaf, tuple_length(leaf) - 1);
      const auto& raw = lp.at(leaf);
      std::size_t consumed = n - tuple_length(leaf);
      auto root_of = [&](std::size_t i) {
        std::size_t j = i;
        while (raw[j].copy_of >= 0) j = static_cast<std::size_t>(raw[j].copy_of);
        return j;
      };
      std::size_t zroot = root_of(last);
      for (std::size_t i = 0; i < last; ++i) {
        std::size_t r = root_of(i);
        if (r == zroot || r == last) {
          ps.push_back({Policy::zeros(), -1});
        } else if (r != i) {
          ps.push_back(ComponentPolicy::copy(static_cast<int>(r)));
        } else {
          ps.push_back({raw[i].policy.after(consumed), -1});
        }
      }
      nodes.insert(t);
      policies[t] = std::move(ps);
      return true;
    }
    bool any = false;
    for (unsigned m = 0; m < (1u << last); ++m) any = explore(tuple_append(t, m)) || any;
    if (any) nodes.insert(t);
    return any;
  };
  if (!explore(Tuple(last))) throw DomainError("the section is empty");
  return ProductTreePresentation(last, std::move(nodes), std::move(policies));
}

TreePresentation section_tree(const ProductTreePresentation& pt, const BitWord& z_prefix, std::size_t depth) {
  if (pt.arity() != 2) throw DomainError("section_tree needs a product tree of arity 2");
  auto s = section(pt, z_prefix, depth);
  std::set<BitWord> nodes;
  for (const auto& t : s.nodes()) nodes.insert(t[0]);
  std::map<BitWord, Policy> policies;
  for (const auto& [t, ps] : s.policies()) policies[t[0]] = ps[0].policy;
  return TreePresentation::explicit_tree(std::move(nodes), std::move(policies));
}

TreePresentation pair_interleave(const ProductTreePresentation& p) {
  return TreePresentation(std::make_shared<PairInterleavedTree>(p));
}

}  // namespace cantor
