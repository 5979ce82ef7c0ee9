#include "cantor/oracle.hpp"

#include <algorithm>

#include "cantor/errors.hpp"

namespace cantor {

using nlohmann::json;

struct Branch::Node {
  Kind kind = Kind::periodic;
  Lasso lasso;
  std::shared_ptr<const Node> a, b;
  NatWord nat_head, nat_period;
  std::uint64_t head_bits = 0, period_bits = 0;
  std::uint64_t shift = 0;
  BitWord word;
};

Branch::Branch(const Lasso& z) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::periodic;
  n->lasso = z;
  node_ = std::move(n);
}

Branch Branch::stretch(const Branch& of) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::stretch;
  n->a = of.node_;
  return Branch(std::move(n));
}

Branch Branch::interleave(const Branch& x, const Branch& y) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::interleave;
  n->a = x.node_;
  n->b = y.node_;
  return Branch(std::move(n));
}

Branch Branch::baire(const NatWord& head, const NatWord& period) {
  if (period.empty()) throw DomainError("baire branch needs a nonempty period");
  auto n = std::make_shared<Node>();
  n->kind = Kind::baire;
  n->nat_head = head;
  n->nat_period = period;
  for (auto e : head.entries()) n->head_bits += e + 1;
  for (auto e : period.entries()) n->period_bits += e + 1;
  return Branch(std::move(n));
}

Branch::Kind Branch::kind() const { return node_->kind; }

namespace {

// Bit i of the blocks 0^(e) 1 over the entries of w.
int block_bit(const NatWord& w, std::uint64_t i) {
  for (auto e : w.entries()) {
    if (i < e) return 0;
    if (i == e) return 1;
    i -= e + 1;
  }
  return 0;
}

}  // namespace

int Branch::bit_at(std::uint64_t n) const {
  const Node& nd = *node_;
  switch (nd.kind) {
    case Kind::periodic:
      return nd.lasso.bit_at(n);
    case Kind::stretch:
      return Branch(nd.a).bit_at(triangular_root(n));
    case Kind::interleave:
      return n % 2 ? Branch(nd.b).bit_at(n / 2) : Branch(nd.a).bit_at(n / 2);
    case Kind::baire:
      if (n < nd.head_bits) return block_bit(nd.nat_head, n);
      return block_bit(nd.nat_period, (n - nd.head_bits) % nd.period_bits);
    case Kind::shift:
      return Branch(nd.a).bit_at(n + nd.shift);
    case Kind::prefixed:
      return n < nd.word.size() ? nd.word[n] : Branch(nd.a).bit_at(n - nd.word.size());
  }
  return 0;
}

BitWord Branch::prefix(std::size_t n) const {
  if (node_->kind == Kind::periodic) return node_->lasso.prefix(n);
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>(bit_at(i));
  return BitWord(std::move(bits));
}

Branch Branch::drop(std::size_t n) const {
  if (n == 0) return *this;
  if (auto l = as_lasso()) return Branch(l->drop(n));
  if (node_->kind == Kind::shift) {
    auto nd = std::make_shared<Node>(*node_);
    nd->shift += n;
    return Branch(std::move(nd));
  }
  auto nd = std::make_shared<Node>();
  nd->kind = Kind::shift;
  nd->a = node_;
  nd->shift = n;
  return Branch(std::move(nd));
}

Branch Branch::prepend(const BitWord& w) const {
  if (w.empty()) return *this;
  if (node_->kind == Kind::periodic) return Branch(node_->lasso.prepend(w));
  auto nd = std::make_shared<Node>();
  nd->kind = Kind::prefixed;
  nd->a = node_;
  nd->word = w;
  return Branch(std::move(nd));
}

bool Branch::in_N() const {
  const Node& nd = *node_;
  switch (nd.kind) {
    case Kind::periodic:
      return nd.lasso.in_N();
    case Kind::stretch:
    case Kind::shift:
    case Kind::prefixed:
      return Branch(nd.a).in_N();
    case Kind::interleave:
      return Branch(nd.a).in_N() || Branch(nd.b).in_N();
    case Kind::baire:
      return true;
  }
  return false;
}

std::optional<Lasso> Branch::as_lasso() const {
  const Node& nd = *node_;
  switch (nd.kind) {
    case Kind::periodic:
      return nd.lasso;
    case Kind::baire:
      return Lasso(encode_check(nd.nat_head), encode_check(nd.nat_period));
    case Kind::interleave: {
      auto x = Branch(nd.a).as_lasso();
      auto y = Branch(nd.b).as_lasso();
      if (!x || !y) return std::nullopt;
      return cantor::interleave(*x, *y);
    }
    case Kind::stretch: {
      auto x = Branch(nd.a).as_lasso();
      if (!x || x->period().size() != 1) return std::nullopt;
      return Lasso(cantor::stretch(x->head()), x->period());
    }
    case Kind::shift: {
      auto x = Branch(nd.a).as_lasso();
      if (!x) return std::nullopt;
      return x->drop(nd.shift);
    }
    case Kind::prefixed: {
      auto x = Branch(nd.a).as_lasso();
      if (!x) return std::nullopt;
      return x->prepend(nd.word);
    }
  }
  return std::nullopt;
}

std::optional<Branch> Branch::unstretch() const {
  if (node_->kind == Kind::stretch) return Branch(node_->a);
  auto z = as_lasso();
  if (!z || z->period().size() != 1) return std::nullopt;
  std::uint64_t k = 0;
  while (triangular(k) < z->head().size()) ++k;
  BitWord body = z->prefix(triangular(k));
  std::vector<std::uint8_t> x;
  for (std::uint64_t i = 0; i < k; ++i) {
    auto block = body.drop(triangular(i)).prefix(i + 1);
    if (!block.is_constant()) return std::nullopt;
    x.push_back(static_cast<std::uint8_t>(block[0]));
  }
  return Branch(Lasso(BitWord(std::move(x)), z->period()));
}

std::optional<std::pair<Branch, Branch>> Branch::deinterleave() const {
  if (node_->kind == Kind::interleave) return std::make_pair(Branch(node_->a), Branch(node_->b));
  auto z = as_lasso();
  if (!z) return std::nullopt;
  auto [x, y] = cantor::deinterleave(*z);
  return std::make_pair(Branch(x), Branch(y));
}

std::optional<std::pair<NatWord, NatWord>> Branch::baire_code() const {
  if (node_->kind == Kind::baire) return std::make_pair(node_->nat_head, node_->nat_period);
  auto z = as_lasso();
  if (!z || !z->in_N()) return std::nullopt;
  const auto& p = z->period();
  std::size_t last = p.size() - 1;
  while (p[last] == 0) --last;
  BitWord head = z->prefix(z->head().size() + last + 1);
  BitWord period = p.drop(last + 1) + p.prefix(last + 1);
  return std::make_pair(decode_hat(head), decode_hat(period));
}

json Branch::to_json() const {
  const Node& nd = *node_;
  switch (nd.kind) {
    case Kind::periodic:
      return json{{"kind", "periodic"}, {"head", nd.lasso.head().str()}, {"period", nd.lasso.period().str()}};
    case Kind::stretch:
      return json{{"kind", "stretch"}, {"of", Branch(nd.a).to_json()}};
    case Kind::interleave:
      return json{{"kind", "interleave"}, {"x", Branch(nd.a).to_json()}, {"y", Branch(nd.b).to_json()}};
    case Kind::baire:
      return json{{"kind", "baire"}, {"head", nd.nat_head.entries()}, {"period", nd.nat_period.entries()}};
    case Kind::shift:
      return json{{"kind", "shift"}, {"of", Branch(nd.a).to_json()}, {"by", nd.shift}};
    case Kind::prefixed:
      return json{{"kind", "prefixed"}, {"word", nd.word.str()}, {"of", Branch(nd.a).to_json()}};
  }
  return nullptr;
}

namespace {

std::string need_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw SpecError(std::string("branch field \"") + key + "\" must be a string");
  return j[key].get<std::string>();
}

NatWord need_nat_word(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw SpecError(std::string("branch field \"") + key + "\" must be an integer array");
  std::vector<std::uint64_t> out;
  for (const auto& e : j[key]) {
    if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<long long>() >= 0))
      throw SpecError("nat word entries must be non-negative integers");
    out.push_back(e.get<std::uint64_t>());
  }
  return NatWord(std::move(out));
}

}  // namespace

Branch Branch::from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw SpecError("branch needs a \"kind\"");
  auto kind = j["kind"].get<std::string>();
  if (kind == "periodic") {
    auto period = BitWord::parse(need_string(j, "period"));
    if (period.empty()) throw SpecError("periodic branch needs a nonempty period");
    BitWord head = j.contains("head") ? BitWord::parse(need_string(j, "head")) : BitWord{};
    return Branch(Lasso(head, period));
  }
  if (kind == "stretch") {
    if (!j.contains("of")) throw SpecError("stretch branch needs \"of\"");
    return stretch(from_json(j["of"]));
  }
  if (kind == "interleave") {
    if (!j.contains("x") || !j.contains("y")) throw SpecError("interleave branch needs \"x\" and \"y\"");
    return interleave(from_json(j["x"]), from_json(j["y"]));
  }
  if (kind == "baire") {
    auto period = need_nat_word(j, "period");
    if (period.empty()) throw SpecError("baire branch needs a nonempty period");
    NatWord head = j.contains("head") ? need_nat_word(j, "head") : NatWord{};
    return baire(head, period);
  }
  if (kind == "shift") {
    if (!j.contains("of") || !j.contains("by") || !j["by"].is_number_unsigned())
      throw SpecError("shift branch needs \"of\" and a non-negative \"by\"");
    return from_json(j["of"]).drop(j["by"].get<std::size_t>());
  }
  if (kind == "prefixed") {
    if (!j.contains("of")) throw SpecError("prefixed branch needs \"of\"");
    return from_json(j["of"]).prepend(BitWord::parse(need_string(j, "word")));
  }
  throw SpecError("unknown branch kind \"" + kind + "\"");
}

std::string Branch::str() const {
  const Node& nd = *node_;
  switch (nd.kind) {
    case Kind::periodic:
      return nd.lasso.str();
    case Kind::stretch:
      return "stretch(" + Branch(nd.a).str() + ")";
    case Kind::interleave:
      return "interleave(" + Branch(nd.a).str() + ", " + Branch(nd.b).str() + ")";
    case Kind::baire:
      return "h(" + nd.nat_head.str() + "(" + nd.nat_period.str() + "))";
    case Kind::shift:
      return "shift(" + Branch(nd.a).str() + ", " + std::to_string(nd.shift) + ")";
    case Kind::prefixed:
      return nd.word.str() + "^" + Branch(nd.a).str();
  }
  return "";
}

// Clopen sets.

RatInterval ClopenOracle::local_bounds(const BitWord& s, unsigned) const {
  Rational total = 0;
  for (const auto& w : a_.words()) {
    if (w.is_prefix_of(s)) return RatInterval::point(1);
    if (s.is_prefix_of(w)) total += pow2(static_cast<long>(s.size()) - static_cast<long>(w.size()));
  }
  return RatInterval::point(total);
}

std::optional<int> ClopenOracle::constant_below(const BitWord& s) const {
  auto v = local_bounds(s, 0).lo;
  if (v == 0) return 0;
  if (v == 1) return 1;
  return std::nullopt;
}

std::optional<RatInterval> ClopenOracle::certify(const Branch& z, std::size_t n) const {
  std::size_t d = std::max(n, a_.depth());
  BitWord p = z.prefix(d);
  RatInterval out = local_bounds(p, 0);
  for (std::size_t m = n; m < d; ++m) out = hull(out, local_bounds(p.prefix(m), 0));
  return out;
}

OraclePtr from_clopen(const ClopenSet& a) { return std::make_shared<ClopenOracle>(a); }

// Disjoint unions of shifted parts.

ComposeOracle::ComposeOracle(std::vector<Part> parts, bool complemented, std::vector<Designated> designated)
    : parts_(std::move(parts)), complemented_(complemented), extra_(std::move(designated)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (!parts_[i].oracle) throw DomainError("compose part without an oracle");
    for (std::size_t j = i + 1; j < parts_.size(); ++j)
      if (parts_[i].prefix.is_prefix_of(parts_[j].prefix) || parts_[j].prefix.is_prefix_of(parts_[i].prefix))
        throw DomainError("compose needs incomparable prefixes; got \"" + parts_[i].prefix.str() + "\" and \"" +
                          parts_[j].prefix.str() + "\"");
  }
}

const Part* ComposeOracle::owner(const BitWord& s) const {
  for (const auto& p : parts_)
    if (p.prefix.is_prefix_of(s)) return &p;
  return nullptr;
}

RatInterval ComposeOracle::raw_bounds(const BitWord& s, unsigned budget) const {
  if (auto* p = owner(s)) return p->oracle->local_bounds(s.drop(p->prefix.size()), budget);
  RatInterval total = RatInterval::point(0);
  for (const auto& p : parts_)
    if (s.is_prefix_of(p.prefix)) {
      Rational w = pow2(static_cast<long>(s.size()) - static_cast<long>(p.prefix.size()));
      total = add(total, scale(p.oracle->local_bounds(BitWord{}, budget), w));
    }
  return total;
}

RatInterval ComposeOracle::local_bounds(const BitWord& s, unsigned budget) const {
  auto r = raw_bounds(s, budget);
  return complemented_ ? complement(r) : r;
}

Rational ComposeOracle::slack(const BitWord& s, unsigned budget) const {
  if (auto* p = owner(s)) return p->oracle->slack(s.drop(p->prefix.size()), budget);
  Rational total = 0;
  for (const auto& p : parts_)
    if (s.is_prefix_of(p.prefix))
      total += pow2(static_cast<long>(s.size()) - static_cast<long>(p.prefix.size())) *
               p.oracle->slack(BitWord{}, budget);
  return total;
}

std::optional<int> ComposeOracle::constant_below(const BitWord& s) const {
  std::optional<int> c;
  if (auto* p = owner(s)) {
    c = p->oracle->constant_below(s.drop(p->prefix.size()));
  } else {
    Rational total = 0;
    for (const auto& p : parts_)
      if (s.is_prefix_of(p.prefix)) {
        auto pc = p.oracle->constant_below(BitWord{});
        if (!pc) return std::nullopt;
        total += pow2(static_cast<long>(s.size()) - static_cast<long>(p.prefix.size())) * *pc;
      }
    if (total == 0) c = 0;
    if (total == 1) c = 1;
  }
  if (c && complemented_) c = 1 - *c;
  return c;
}

std::optional<RatInterval> ComposeOracle::certify(const Branch& z, std::size_t n) const {
  std::optional<RatInterval> r;
  std::size_t reach = 0;
  for (const auto& p : parts_) {
    auto zp = z.prefix(p.prefix.size());
    if (zp == p.prefix) {
      if (n < p.prefix.size()) return std::nullopt;
      r = p.oracle->certify(z.drop(p.prefix.size()), n - p.prefix.size());
      if (!r) return std::nullopt;
      return complemented_ ? complement(*r) : *r;
    }
    std::size_t common = 0;
    while (common < zp.size() && zp[common] == p.prefix[common]) ++common;
    reach = std::max(reach, common + 1);
  }
  if (n < reach) return std::nullopt;
  return RatInterval::point(complemented_ ? 1 : 0);
}

std::optional<Rational> ComposeOracle::oscillation_lower(const Branch& z) const {
  for (const auto& p : parts_)
    if (z.prefix(p.prefix.size()) == p.prefix) return p.oracle->oscillation_lower(z.drop(p.prefix.size()));
  return std::nullopt;
}

std::vector<Designated> ComposeOracle::designated() const {
  std::vector<Designated> out;
  for (const auto& p : parts_)
    for (auto d : p.oracle->designated()) {
      d.z = d.z.prepend(p.prefix);
      if (complemented_) d.density = complement(d.density);
      out.push_back(std::move(d));
    }
  for (auto d : extra_) out.push_back(std::move(d));
  return out;
}

OraclePtr compose(std::vector<Part> parts, bool complemented) {
  return std::make_shared<ComposeOracle>(std::move(parts), complemented);
}

OraclePtr complement_of(const OraclePtr& a) {
  return std::make_shared<ComposeOracle>(std::vector<Part>{{BitWord{}, a}}, true);
}

// ⋃_m 0^m 1 D.

namespace {

// Position of the first 1 in s, or s.size().
std::size_t first_one(const BitWord& s) {
  std::size_t i = 0;
  while (i < s.size() && s[i] == 0) ++i;
  return i;
}

}  // namespace

RatInterval SpineRepeatOracle::local_bounds(const BitWord& s, unsigned budget) const {
  std::size_t a = first_one(s);
  if (a == s.size()) return part_->local_bounds(BitWord{}, budget);
  return part_->local_bounds(s.drop(a + 1), budget);
}

Rational SpineRepeatOracle::slack(const BitWord& s, unsigned budget) const {
  std::size_t a = first_one(s);
  return part_->slack(a == s.size() ? BitWord{} : s.drop(a + 1), budget);
}

std::optional<int> SpineRepeatOracle::constant_below(const BitWord& s) const {
  std::size_t a = first_one(s);
  return part_->constant_below(a == s.size() ? BitWord{} : s.drop(a + 1));
}

std::optional<RatInterval> SpineRepeatOracle::certify(const Branch& z, std::size_t n) const {
  auto l = z.as_lasso();
  if (l && *l == Lasso::zeros()) return part_->local_bounds(BitWord{}, 16);
  std::size_t a = first_one(z.prefix(n));
  if (a >= n) return std::nullopt;
  return part_->certify(z.drop(a + 1), n - a - 1);
}

std::optional<Rational> SpineRepeatOracle::oscillation_lower(const Branch& z) const {
  auto l = z.as_lasso();
  if (l && *l == Lasso::zeros()) return std::nullopt;
  for (std::size_t a = 0; a < 4096; ++a)
    if (z.bit_at(a)) return part_->oscillation_lower(z.drop(a + 1));
  return std::nullopt;
}

// Traces and classification.

std::vector<TracePoint> trace(const SetOracle& a, const Branch& z, std::size_t steps, unsigned budget) {
  std::vector<TracePoint> out;
  out.reserve(steps);
  BitWord p = z.prefix(steps);
  for (std::size_t n = 0; n < steps; ++n) out.push_back({n, a.local_bounds(p.prefix(n), budget)});
  return out;
}

json interval_json(const RatInterval& r) { return json{{"lo", to_string(r.lo)}, {"hi", to_string(r.hi)}}; }

std::string PointClassification::verdict_name() const {
  switch (verdict) {
    case Verdict::converges:
      return "converges";
    case Verdict::blurry:
      return "blurry";
    case Verdict::undetermined:
      return "undetermined";
  }
  return "";
}

namespace {

json points_json(const std::vector<TracePoint>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(json{{"n", p.n}, {"lo", to_string(p.bounds.lo)}, {"hi", to_string(p.bounds.hi)}});
  return out;
}

}  // namespace

json PointClassification::to_json() const {
  json out{{"verdict", verdict_name()}};
  switch (verdict) {
    case Verdict::converges:
      out["value"] = interval_json(value);
      out["from_depth"] = certified_depth;
      break;
    case Verdict::blurry:
      out["osc_lower"] = to_string(osc_lower);
      out["witnesses"] = json{{"high", points_json(high)}, {"low", points_json(low)}};
      break;
    case Verdict::undetermined:
      out["last"] = interval_json(value);
      break;
  }
  return out;
}

PointClassification classify(const SetOracle& a, const Branch& z, const Rational& eps, std::size_t max_depth,
                             unsigned budget) {
  if (eps <= 0) throw DomainError("classify needs eps > 0");
  PointClassification out;
  BitWord p = z.prefix(max_depth);
  for (std::size_t n = 0; n <= max_depth; ++n)
    if (auto c = a.constant_below(p.prefix(n))) {
      out.verdict = PointClassification::Verdict::converges;
      out.value = RatInterval::point(*c);
      out.certified_depth = n;
      return out;
    }
  for (std::size_t n = 0; n <= max_depth; ++n) {
    auto cert = a.certify(z, n);
    if (cert && cert->width() <= eps) {
      out.verdict = PointClassification::Verdict::converges;
      out.value = *cert;
      out.certified_depth = n;
      return out;
    }
  }
  auto tr = trace(a, z, max_depth, budget);
  std::vector<TracePoint> late(tr.begin() + static_cast<std::ptrdiff_t>(max_depth / 2), tr.end());
  out.value = tr.empty() ? RatInterval::point(0) : tr.back().bounds;
  if (late.size() >= 4) {
    auto high = late, low = late;
    std::stable_sort(high.begin(), high.end(), [](const TracePoint& x, const TracePoint& y) { return x.bounds.lo > y.bounds.lo; });
    std::stable_sort(low.begin(), low.end(), [](const TracePoint& x, const TracePoint& y) { return x.bounds.hi < y.bounds.hi; });
    Rational delta = high[1].bounds.lo - low[1].bounds.hi;
    if (delta > 0) {
      out.verdict = PointClassification::Verdict::blurry;
      out.osc_lower = delta;
      if (auto meta = a.oscillation_lower(z)) out.osc_lower = std::min(delta, *meta);
      out.high = {high[0], high[1]};
      out.low = {low[0], low[1]};
      return out;
    }
  }
  return out;
}

}  // namespace cantor
