#include "cantor/construct.hpp"

#include <algorithm>
#include <set>

#include "cantor/errors.hpp"

namespace cantor {

using nlohmann::json;

namespace {

Rational bit_value(const BitWord& t) {
  mpz_class v = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    v <<= 1;
    if (t[i]) v += 1;
  }
  return ratio(v, mpz_class(1) << static_cast<mp_bitcnt_t>(t.size()));
}

Rational parity_value(const NatWord& u) {
  mpz_class v = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    v <<= 1;
    if (u[i] % 2) v += 1;
  }
  return ratio(v, mpz_class(1) << static_cast<mp_bitcnt_t>(u.size()));
}

Rational need_rational(const json& j, const char* key) {
  if (!j.contains(key)) throw SpecError(std::string("missing \"") + key + "\"");
  const auto& v = j[key];
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw SpecError(std::string("\"") + key + "\" must be a rational string");
}

}  // namespace

// Function presentations.

FunctionPresentation::FunctionPresentation(std::string name, json params, NatIntervals nat, CantorIntervals cantor,
                                           bool lipschitz, std::string image_doc, Membership member)
    : name_(std::move(name)),
      params_(std::move(params)),
      nat_(std::move(nat)),
      cantor_(std::move(cantor)),
      lipschitz_(lipschitz),
      image_doc_(std::move(image_doc)),
      member_(std::move(member)) {}

FunctionPresentation FunctionPresentation::constant(const Rational& v) {
  if (v < 0 || v > 1) throw DomainError("constant function value must lie in [0;1], got " + to_string(v));
  auto pt = RatInterval::point(v);
  return FunctionPresentation(
      "constant", json{{"preset", "constant"}, {"value", to_string(v)}}, [pt](const NatWord&) { return pt; },
      [pt](const BitWord&) { return pt; }, true, "{" + to_string(v) + "}");
}

FunctionPresentation FunctionPresentation::interval(const Rational& a, const Rational& b) {
  if (a < 0 || b > 1 || a >= b) throw DomainError("interval preset needs 0 <= a < b <= 1");
  Rational w = b - a;
  auto nat = [a, w](const NatWord& u) {
    Rational lo = a + w * parity_value(u);
    return RatInterval(lo, lo + w * pow2(-static_cast<long>(u.size())));
  };
  auto cantor = [nat](const BitWord& t) { return nat(decode_hat(t)); };
  return FunctionPresentation("interval", json{{"preset", "interval"}, {"a", to_string(a)}, {"b", to_string(b)}},
                              nat, cantor, true, "[" + to_string(a) + ";" + to_string(b) + "]");
}

FunctionPresentation FunctionPresentation::injective(const Rational& eps) {
  if (eps <= 0 || eps >= Rational(1, 2)) throw DomainError("injective preset needs 0 < eps < 1/2");
  Rational w = 1 - 2 * eps;
  auto cantor = [eps, w](const BitWord& t) {
    Rational lo = eps + w * bit_value(t);
    return RatInterval(lo, lo + w * pow2(-static_cast<long>(t.size())));
  };
  auto nat = [cantor](const NatWord& u) { return cantor(encode_check(u)); };
  return FunctionPresentation("injective", json{{"preset", "injective"}, {"eps", to_string(eps)}}, nat, cantor, true,
                              "(" + to_string(eps) + ";" + to_string(1 - eps) + "]");
}

std::vector<FunctionPresentation> FunctionPresentation::shipped() {
  return {constant(Rational(1, 2)), interval(Rational(1, 4), Rational(3, 4)), injective(Rational(1, 8))};
}

FunctionPresentation FunctionPresentation::from_json(const json& j) {
  if (!j.is_object() || !j.contains("preset") || !j["preset"].is_string())
    throw SpecError("function presentation needs a \"preset\"");
  auto p = j["preset"].get<std::string>();
  try {
    if (p == "constant") return constant(need_rational(j, "value"));
    if (p == "interval") return interval(need_rational(j, "a"), need_rational(j, "b"));
    if (p == "injective") return injective(need_rational(j, "eps"));
  } catch (const DomainError& e) {
    throw SpecError(e.what());
  }
  throw SpecError("unknown function preset \"" + p + "\"");
}

json FunctionPresentation::to_json() const { return params_; }

RatInterval FunctionPresentation::interval_at(const NatWord& u) const {
  if (!member(u)) throw DomainError("node \"" + u.str() + "\" is not in the domain tree");
  return nat_(u);
}

RatInterval FunctionPresentation::cantor_interval_at(const BitWord& t) const {
  if (!cantor_) throw DomainError("function presentation \"" + name_ + "\" has no view on binary nodes");
  return cantor_(t);
}

RatInterval FunctionPresentation::value_near(const NatWord& head, const NatWord& period, std::size_t depth) const {
  if (period.empty()) throw DomainError("value_near needs a nonempty period");
  std::vector<std::uint64_t> e = head.entries();
  for (std::size_t i = 0; e.size() < depth; ++i) e.push_back(period[i % period.size()]);
  return interval_at(NatWord(std::move(e)));
}

std::optional<NatWord> FunctionPresentation::origin(const NatWord& u) const {
  if (!origin_) return std::nullopt;
  auto it = origin_->find(u);
  if (it == origin_->end()) return std::nullopt;
  return it->second;
}

// Dyadic approximations.

RatInterval approximation_interval(const RatInterval& closure, std::size_t len) {
  if (closure.lo < closure.hi) return closure;
  Rational w = pow2(-static_cast<long>(len) - 1);
  return RatInterval(closure.lo - w, closure.lo + w);
}

Rational canonical_label(const RatInterval& closure, std::size_t len) {
  auto i = approximation_interval(closure, len);
  return least_dyadic_in(i.lo, i.hi).value();
}

Rational shift_inside(const Rational& base, const Rational& shift) {
  Rational v = base + shift;
  if (v <= 0) return base / 2;
  if (v >= 1) return (1 + base) / 2;
  return v;
}

Rational CanonicalApprox::at(const NatWord& u) const { return canonical_label(c_.interval_at(u), u.size()); }
Rational CanonicalApprox::at(const BitWord& t) const { return canonical_label(c_.cantor_interval_at(t), t.size()); }
RatInterval CanonicalApprox::interval(const NatWord& u) const {
  return approximation_interval(c_.interval_at(u), u.size());
}
RatInterval CanonicalApprox::interval(const BitWord& t) const {
  return approximation_interval(c_.cantor_interval_at(t), t.size());
}

CanonicalApprox canonical_approx(const FunctionPresentation& c) { return CanonicalApprox(c); }

namespace {

Rational pair_shift(std::size_t len) { return pow2(-static_cast<long>(len) - 2); }

}  // namespace

Rational ApproxPair::minus(const NatWord& u) const { return shift_inside(phi_.at(u), -pair_shift(u.size())); }
Rational ApproxPair::plus(const NatWord& u) const { return shift_inside(phi_.at(u), pair_shift(u.size())); }
Rational ApproxPair::minus(const BitWord& t) const { return shift_inside(phi_.at(t), -pair_shift(t.size())); }
Rational ApproxPair::plus(const BitWord& t) const { return shift_inside(phi_.at(t), pair_shift(t.size())); }

ApproxPair approx_pair(const FunctionPresentation& c) { return ApproxPair(CanonicalApprox(c)); }

FunctionPresentation lipschitz_reparam(const FunctionPresentation& c, std::size_t depth, std::size_t fanout) {
  if (fanout == 0) throw DomainError("reparametrization needs a positive fanout");
  auto origin = std::make_shared<std::map<NatWord, NatWord>>();
  (*origin)[NatWord{}] = NatWord{};
  std::vector<NatWord> level{NatWord{}};
  for (std::size_t n = 0; n < depth; ++n) {
    Rational bound = pow2(-static_cast<long>(n) - 1);
    std::vector<NatWord> next;
    for (const auto& a : level) {
      const NatWord& base = origin->at(a);
      std::vector<NatWord> found;
      std::vector<NatWord> stack;
      for (std::size_t i = fanout; i-- > 0;) stack.push_back(base.append(i));
      while (!stack.empty()) {
        NatWord w = stack.back();
        stack.pop_back();
        if (!c.member(w)) continue;
        if (c.interval_at(w).width() <= bound) {
          found.push_back(w);
          continue;
        }
        if (w.size() >= base.size() + depth)
          throw DomainError("diameters do not vanish within depth " + std::to_string(depth) + " below node \"" +
                            w.str() + "\"");
        for (std::size_t i = fanout; i-- > 0;) stack.push_back(w.append(i));
      }
      for (std::size_t k = 0; k < found.size(); ++k) {
        NatWord child = a.append(k);
        (*origin)[child] = found[k];
        next.push_back(child);
      }
    }
    level = std::move(next);
  }
  auto nat = [c, origin](const NatWord& u) {
    auto it = origin->find(u);
    if (it == origin->end()) throw DomainError("node \"" + u.str() + "\" lies beyond the materialized reparametrization");
    return c.interval_at(it->second);
  };
  auto member = [origin](const NatWord& u) { return origin->count(u) > 0; };
  FunctionPresentation out("reparam", json{{"preset", "reparam"}, {"of", c.to_json()}, {"depth", depth}}, nat, {},
                           true, c.image_doc(), member);
  out.set_origin(origin);
  return out;
}

// Dualistic sets.

ClopenSet u2_truncated(std::size_t max_len) {
  std::vector<BitWord> words;
  if (max_len >= 1) words.push_back(BitWord{1});
  for (std::size_t n = 2; n + 2 <= max_len; ++n)
    for (std::size_t m = 1; m < n && n + m + 1 <= max_len; ++m)
      words.push_back(BitWord::constant(n, 0) + BitWord::constant(m, 1) + BitWord{0});
  return ClopenSet::from_words(std::move(words));
}

namespace {

// The m-th 4-ary digit of r, terminating expansion preferred.
int quaternary_digit(const Rational& r, std::size_t m) {
  mpz_class num = r.get_num();
  mpz_class scaled = num << (2 * m);
  mpz_class q = scaled / r.get_den();
  mpz_class d = q % 4;
  return static_cast<int>(d.get_si());
}

Rational quarter_power(std::size_t n) { return pow2(-2 * static_cast<long>(n)); }

}  // namespace

DualisticOracle::DualisticOracle(Rational r, Rational d, ClopenSet v, Rational w)
    : r_(std::move(r)), d_(std::move(d)), v_(std::move(v)), w_(std::move(w)) {
  for (int j = 0; j <= 4; ++j) pieces_.push_back(canonical_of_measure(ratio(j, 4)));
  if (w_ != Rational(1, 3)) {
    for (std::size_t m = 1;; ++m) {
      int u = quaternary_digit(w_, m);
      if (u == 1) continue;
      if (u != 0) throw DomainError("4-ary expansion of " + to_string(w_) + " exceeds 1/3");
      h_ = m;
      break;
    }
  }
}

std::shared_ptr<const DualisticOracle> DualisticOracle::w_f(const Rational& r) {
  if (r <= 0 || r > Rational(1, 3)) throw DomainError("dualistic_w_f needs 0 < r <= 1/3, got " + to_string(r));
  return std::shared_ptr<const DualisticOracle>(new DualisticOracle(r, 0, ClopenSet::empty(), r));
}

std::shared_ptr<const DualisticOracle> DualisticOracle::of_measure(const Rational& r) {
  if (r <= 0 || r >= 1) throw DomainError("dualistic_of_measure needs 0 < r < 1, got " + to_string(r));
  if (r <= Rational(1, 3)) return w_f(r);
  Rational d = least_dyadic_in(r - Rational(1, 3), std::min(r, Rational(2, 3))).value();
  std::size_t len = 1;
  ClopenSet u = u2_truncated(len);
  while (u.measure() <= d) u = u2_truncated(++len);
  ClopenSet v = subset_of_measure(u, d);
  return std::shared_ptr<const DualisticOracle>(new DualisticOracle(r, d, std::move(v), r - d));
}

Rational DualisticOracle::f(std::size_t n) const {
  if (n == 0) throw DomainError("f is defined for n >= 1");
  if (h_ == 0 || n < h_) return 1;
  return ratio(quaternary_digit(w_, n + 1), 4);
}

Rational DualisticOracle::tail_sum(std::size_t n) const {
  if (n == 0) throw DomainError("tail sums start at n = 1");
  if (h_ == 0) return quarter_power(n) * Rational(4, 3);
  if (n >= h_) {
    Rational scaled = w_ / quarter_power(n);
    mpz_class whole = scaled.get_num() / scaled.get_den();
    return (scaled - Rational(whole)) * quarter_power(n);
  }
  Rational s = tail_sum(h_);
  for (std::size_t k = n; k < h_; ++k) s += quarter_power(k);
  return s;
}

Rational DualisticOracle::w_local(const BitWord& s) const {
  std::size_t a = 0;
  while (a < s.size() && s[a] == 0) ++a;
  if (a == s.size()) return pow2(static_cast<long>(a)) * tail_sum(std::max<std::size_t>(a, 1));
  if (a == 0) return 0;
  std::size_t n = a, b = 0;
  while (a + b < s.size() && s[a + b] == 1) ++b;
  if (b < n) {
    if (a + b < s.size()) return 0;
    return pow2(static_cast<long>(b) - static_cast<long>(n)) * f(n);
  }
  const auto& piece = pieces_[static_cast<std::size_t>(Rational(f(n) * 4).get_num().get_si())];
  return localize(piece, s.drop(2 * n)).measure();
}

Rational DualisticOracle::exact(const BitWord& s) const {
  Rational v = w_local(s);
  if (!v_.is_empty()) v += localize(v_, s).measure();
  return v;
}

RatInterval DualisticOracle::local_bounds(const BitWord& s, unsigned) const { return RatInterval::point(exact(s)); }

std::optional<int> DualisticOracle::constant_below(const BitWord& s) const {
  Rational v = exact(s);
  if (v == 0) return 0;
  if (v == 1) return 1;
  return std::nullopt;
}

std::optional<RatInterval> DualisticOracle::certify(const Branch& z, std::size_t n) const {
  auto l = z.as_lasso();
  if (!l || !(*l == Lasso::zeros())) return std::nullopt;
  if (n == 0) return RatInterval(0, 1);
  Rational hi = Rational(4, 3) * pow2(-static_cast<long>(n));
  Rational extra = 0;
  for (std::size_t m = n; m < v_.depth(); ++m)
    extra = std::max(extra, localize(v_, BitWord::constant(m, 0)).measure());
  return RatInterval(0, std::min<Rational>(1, hi + extra));
}

std::vector<Designated> DualisticOracle::designated() const {
  return {{Branch(Lasso::zeros()), RatInterval::point(0), "frontier point"}};
}

json DualisticOracle::to_json() const { return json{{"kind", "dualistic"}, {"measure", to_string(r_)}}; }

OraclePtr dualistic_w_f(const Rational& r) { return DualisticOracle::w_f(r); }
OraclePtr dualistic_of_measure(const Rational& r) { return DualisticOracle::of_measure(r); }

OraclePtr solid_countable_range(const std::vector<Rational>& s) {
  std::set<Rational> seen;
  for (const auto& r : s) {
    if (r <= 0 || r >= 1) throw DomainError("countable range values must lie in (0;1), got " + to_string(r));
    if (!seen.insert(r).second) throw DomainError("duplicate value " + to_string(r) + " in countable range");
  }
  if (s.empty()) return from_clopen(ClopenSet::from_words({BitWord{0}}));
  std::vector<Part> parts;
  std::vector<Designated> marks;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::size_t n = i + 1;
    BitWord prefix = BitWord::constant(n, 0) + BitWord::constant(n, 1);
    parts.push_back({prefix, std::make_shared<SpineRepeatOracle>(dualistic_of_measure(s[i]))});
    marks.push_back({Branch(Lasso(prefix, BitWord{0})), RatInterval::point(s[i]), "value " + to_string(s[i])});
  }
  marks.push_back({Branch(Lasso::zeros()), RatInterval::point(0), "spine"});
  return std::make_shared<ComposeOracle>(std::move(parts), false, std::move(marks));
}

// Label maps.

std::optional<LabelMap::Tail> LabelMap::tail(const Branch& x, std::size_t k) const {
  return Tail{spread(x.prefix(k)), std::nullopt};
}

namespace {

void check_label(const Rational& r, const std::string& where) {
  if (r <= 0 || r >= 1) throw DomainError("label " + to_string(r) + " at " + where + " is outside (0;1)");
}

}  // namespace

ExplicitLabels::ExplicitLabels(std::map<BitWord, Rational> labels, Rational default_label)
    : labels_(std::move(labels)), default_(std::move(default_label)) {
  for (const auto& [t, r] : labels_) check_label(r, "node \"" + t.str() + "\"");
  check_label(default_, "the default");
}

Rational ExplicitLabels::label(const BitWord& t) const {
  for (std::size_t n = t.size() + 1; n-- > 0;) {
    auto it = labels_.find(t.prefix(n));
    if (it != labels_.end()) return it->second;
  }
  return default_;
}

RatInterval ExplicitLabels::spread(const BitWord& t) const {
  auto out = RatInterval::point(label(t));
  for (auto it = labels_.upper_bound(t); it != labels_.end() && t.is_prefix_of(it->first); ++it)
    out = hull(out, RatInterval::point(it->second));
  return out;
}

bool ExplicitLabels::constant_below(const BitWord& t) const {
  auto it = labels_.upper_bound(t);
  return it == labels_.end() || !t.is_prefix_of(it->first);
}

std::optional<LabelMap::Tail> ExplicitLabels::tail(const Branch& x, std::size_t k) const {
  return Tail{spread(x.prefix(k)), std::nullopt};
}

json ExplicitLabels::to_json() const {
  json labels = json::object();
  for (const auto& [t, r] : labels_) labels[t.str()] = to_string(r);
  return json{{"labels", labels}, {"default_label", to_string(default_)}};
}

std::shared_ptr<const ExplicitLabels> ExplicitLabels::from_json(const json& j) {
  std::map<BitWord, Rational> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_object()) throw SpecError("\"labels\" must be an object");
    for (const auto& [k, v] : j["labels"].items()) {
      if (!v.is_string()) throw SpecError("labels must be rational strings");
      labels[BitWord::parse(k)] = parse_rational(v.get<std::string>());
    }
  }
  Rational def(1, 2);
  if (j.contains("default_label")) def = need_rational(j, "default_label");
  try {
    return std::make_shared<ExplicitLabels>(std::move(labels), def);
  } catch (const DomainError& e) {
    throw SpecError(e.what());
  }
}

std::string variant_name(Variant v) { return v == Variant::closed ? "closed" : "open"; }

Variant parse_variant(const std::string& s) {
  if (s == "closed") return Variant::closed;
  if (s == "open") return Variant::open;
  throw SpecError("variant must be \"closed\" or \"open\", got \"" + s + "\"");
}

// Offspring.

OffspringOracle::OffspringOracle(TreePresentation tree, LabelPtr labels, Variant variant,
                                 std::optional<TreePresentation> prune, std::vector<Designated> designated)
    : tree_(std::move(tree)),
      labels_(std::move(labels)),
      variant_(variant),
      prune_(std::move(prune)),
      designated_(std::move(designated)) {
  if (!labels_) throw DomainError("offspring needs a label map");
}

bool OffspringOracle::member(const BitWord& t) const {
  return tree_.member(t) && (!prune_ || prune_->member(t));
}

Rational OffspringOracle::checked_label(const BitWord& t) const {
  Rational l = labels_->label(t);
  check_label(l, "node \"" + t.str() + "\"");
  return l;
}

OraclePtr OffspringOracle::compliant(const BitWord& t) const {
  Rational l = checked_label(t);
  {
    std::lock_guard<std::mutex> g(mu_);
    auto it = compliant_.find(l);
    if (it != compliant_.end()) return it->second;
  }
  OraclePtr d = is_dyadic(l) ? from_clopen(canonical_of_measure(l)) : dualistic_of_measure(l);
  std::lock_guard<std::mutex> g(mu_);
  return compliant_.emplace(l, d).first->second;
}

RatInterval OffspringOracle::node_bounds(const BitWord& t, unsigned budget) const {
  {
    std::lock_guard<std::mutex> g(mu_);
    auto it = memo_.find({t, budget});
    if (it != memo_.end()) return it->second;
  }
  const long k = static_cast<long>(t.size());
  const Rational keep = 1 - pow2(-k);
  RatInterval out;
  if (labels_->constant_below(t) && tree_.full_below(t) && (!prune_ || prune_->full_below(t))) {
    out = RatInterval::point(checked_label(t));
  } else if (budget == 0) {
    auto sp = labels_->spread(t);
    out = RatInterval(keep * sp.lo, std::min<Rational>(1, keep * sp.hi + pow2(-k)));
  } else {
    out = RatInterval::point(keep * checked_label(t));
    Rational w = pow2(-k - 1);
    for (int i = 0; i < 2; ++i) {
      BitWord c = t.append(i);
      if (member(c)) out = add(out, scale(node_bounds(c, budget - 1), w));
    }
  }
  std::lock_guard<std::mutex> g(mu_);
  memo_.emplace(std::make_pair(t, budget), out);
  return out;
}

namespace {

struct Located {
  enum class Where { body, flag, outside } where = Where::body;
  BitWord t;            // the stretched node reached
  std::size_t pos = 0;  // body: start of the current block; flag: first bit after the flag
};

Located locate(const BitWord& s, const OffspringOracle& a) {
  Located out;
  for (std::size_t k = 0;; ++k) {
    std::size_t len = k + 1;
    if (out.pos + len > s.size()) return out;
    BitWord block = s.drop(out.pos).prefix(len);
    if (!block.is_constant()) {
      out.where = Located::Where::flag;
      out.pos += len;
      return out;
    }
    BitWord next = out.t.append(block[0]);
    if (!a.member(next)) {
      out.where = Located::Where::outside;
      out.pos += len;
      return out;
    }
    out.t = std::move(next);
    out.pos += len;
  }
}

}  // namespace

RatInterval OffspringOracle::local_bounds(const BitWord& s, unsigned budget) const {
  auto loc = locate(s, *this);
  switch (loc.where) {
    case Located::Where::outside:
      return RatInterval::point(0);
    case Located::Where::flag:
      return compliant(loc.t)->local_bounds(s.drop(loc.pos), budget);
    case Located::Where::body:
      break;
  }
  BitWord p = s.drop(loc.pos);
  if (p.empty()) return node_bounds(loc.t, budget);
  const long len = static_cast<long>(loc.t.size()) + 1;
  const long m = static_cast<long>(p.size());
  Rational completions = pow2(len - m);
  RatInterval sum = RatInterval::point(0);
  Rational constant = 0;
  if (p.is_constant()) {
    constant = 1;
    BitWord c = loc.t.append(p[0]);
    if (member(c)) sum = node_bounds(c, budget);
  }
  Rational flags = completions - constant;
  return scale(add(sum, flags * checked_label(loc.t)), pow2(m - len));
}

Rational OffspringOracle::slack(const BitWord& s, unsigned budget) const {
  auto loc = locate(s, *this);
  if (loc.where == Located::Where::outside) return 0;
  if (loc.where == Located::Where::flag) return compliant(loc.t)->slack(s.drop(loc.pos), budget);
  return std::min<Rational>(1, labels_->spread(loc.t).width() + pow2(1 - static_cast<long>(budget)));
}

std::optional<int> OffspringOracle::constant_below(const BitWord& s) const {
  auto loc = locate(s, *this);
  if (loc.where == Located::Where::outside) return 0;
  if (loc.where == Located::Where::flag) return compliant(loc.t)->constant_below(s.drop(loc.pos));
  return std::nullopt;
}

std::optional<bool> OffspringOracle::branch_in_tree(const Branch& x) const {
  auto l = x.as_lasso();
  if (!l) return std::nullopt;
  auto a = tree_.contains_branch(*l);
  if (a && !*a) return false;
  std::optional<bool> b = true;
  if (prune_) b = prune_->contains_branch(*l);
  if (b && !*b) return false;
  if (a && b) return true;
  return std::nullopt;
}

namespace {

constexpr std::size_t kScanBlocks = 64;

}  // namespace

std::optional<RatInterval> OffspringOracle::certify(const Branch& z, std::size_t n) const {
  if (auto x = z.unstretch()) {
    std::size_t k = triangular_root(n);
    BitWord xp = x->prefix(k + 1);
    for (std::size_t j = 1; j <= k + 1; ++j)
      if (!member(xp.prefix(j))) {
        if (n >= triangular(j)) return RatInterval::point(0);
        return std::nullopt;
      }
    auto in = branch_in_tree(*x);
    if (!in || !*in) return std::nullopt;
    auto tail = labels_->tail(*x, k);
    if (!tail) return std::nullopt;
    Rational w = pow2(-static_cast<long>(k));
    return clamp_unit(RatInterval(tail->hull.lo - w, tail->hull.hi + w));
  }
  BitWord t;
  std::size_t pos = 0;
  for (std::size_t k = 0; k < kScanBlocks; ++k) {
    std::size_t len = k + 1;
    BitWord block = z.prefix(pos + len).drop(pos);
    pos += len;
    if (!block.is_constant()) {
      if (n < pos) return std::nullopt;
      return compliant(t)->certify(z.drop(pos), n - pos);
    }
    t = t.append(block[0]);
    if (!member(t)) {
      if (n < pos) return std::nullopt;
      return RatInterval::point(0);
    }
  }
  return std::nullopt;
}

std::optional<Rational> OffspringOracle::oscillation_lower(const Branch& z) const {
  if (auto x = z.unstretch()) {
    auto in = branch_in_tree(*x);
    if (!in || !*in) return std::nullopt;
    auto tail = labels_->tail(*x, 0);
    if (!tail) return std::nullopt;
    return tail->osc_lower;
  }
  BitWord t;
  std::size_t pos = 0;
  for (std::size_t k = 0; k < kScanBlocks; ++k) {
    std::size_t len = k + 1;
    BitWord block = z.prefix(pos + len).drop(pos);
    pos += len;
    if (!block.is_constant()) return compliant(t)->oscillation_lower(z.drop(pos));
    t = t.append(block[0]);
    if (!member(t)) return std::nullopt;
  }
  return std::nullopt;
}

json OffspringOracle::to_json() const {
  auto labels = labels_->to_json();
  if (labels.is_null() || !tree_.is_explicit()) return nullptr;
  json out{{"kind", "offspring"}, {"tree", tree_.to_json()}, {"variant", variant_name(variant_)}};
  for (const auto& [k, v] : labels.items()) out[k] = v;
  if (prune_) {
    if (!prune_->is_explicit()) return nullptr;
    out["prune"] = prune_->to_json();
  }
  return out;
}

OffspringPtr offspring_build(const TreePresentation& t, LabelPtr labels, Variant variant,
                             std::vector<Designated> designated) {
  return std::make_shared<OffspringOracle>(t, std::move(labels), variant, std::nullopt, std::move(designated));
}

OffspringPtr offspring_prune(const OffspringOracle& a, const TreePresentation& u) {
  constexpr std::size_t kCheckDepth = 10;
  std::vector<BitWord> stack{BitWord{}};
  while (!stack.empty()) {
    BitWord w = stack.back();
    stack.pop_back();
    if (!u.member(w)) continue;
    if (!a.member(w)) throw DomainError("pruning tree is not a subtree: \"" + w.str() + "\" is not a node");
    if (w.size() < kCheckDepth) {
      stack.push_back(w.append(0));
      stack.push_back(w.append(1));
    }
  }
  return std::make_shared<OffspringOracle>(a.tree(), a.labels(), a.variant(), u);
}

}  // namespace cantor
