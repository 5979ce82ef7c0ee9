#include "cantor/reduce.hpp"

#include <algorithm>
#include <set>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

Rational half_pow(std::size_t n) { return pow2(-static_cast<long>(n)); }

bool even(std::size_t n) { return n % 2 == 0; }

std::optional<Lasso> lasso_of(const Branch& x) { return x.as_lasso(); }

// Head of x before its trailing zeros, when x is a lasso outside N.
std::optional<BitWord> zero_tail_head(const Branch& x) {
  if (x.in_N()) return std::nullopt;
  auto l = lasso_of(x);
  if (!l) return std::nullopt;
  return x.prefix(l->head_length_before_zeros());
}

std::optional<std::pair<Branch, Branch>> split(const Branch& w) {
  if (auto l = w.as_lasso()) {
    auto [x, y] = deinterleave(*l);
    return std::make_pair(Branch(x), Branch(y));
  }
  return w.deinterleave();
}

// Even and odd positions of s↾2⌊|s|/2⌋.
std::pair<BitWord, BitWord> halves(const BitWord& s) {
  std::vector<std::uint8_t> t, v;
  for (std::size_t i = 0; i + 1 < s.size(); i += 2) {
    t.push_back(static_cast<std::uint8_t>(s[i]));
    v.push_back(static_cast<std::uint8_t>(s[i + 1]));
  }
  return {BitWord(std::move(t)), BitWord(std::move(v))};
}

// All nat words with entries < fanout and length <= depth, in shortlex order.
std::vector<NatWord> nat_words(std::size_t depth, std::size_t fanout) {
  std::vector<NatWord> out{NatWord{}};
  std::size_t begin = 0;
  for (std::size_t d = 0; d < depth; ++d) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t k = 0; k < fanout; ++k) out.push_back(out[i].append(k));
    begin = end;
  }
  return out;
}

}  // namespace

// First reduction.

FirstReductionLabels::FirstReductionLabels(FunctionPresentation c) : pair_(CanonicalApprox(std::move(c))) {
  if (!pair_.phi().function().has_cantor_view())
    throw DomainError("first reduction needs a function with a view on binary nodes");
}

Rational FirstReductionLabels::label(const BitWord& t) const {
  auto ht = head_tail(t);
  return even(ht.zero_tail) ? pair_.minus(ht.head) : pair_.plus(ht.head);
}

RatInterval FirstReductionLabels::spread(const BitWord& t) const {
  BitWord v = head_tail(t).head;
  auto j = pair_.phi().function().cantor_interval_at(v);
  Rational w = 3 * half_pow(v.size() + 2);
  return clamp_unit(RatInterval(j.lo - w, j.hi + w));
}

std::optional<LabelMap::Tail> FirstReductionLabels::tail(const Branch& x, std::size_t k) const {
  Tail out{spread(x.prefix(k)), std::nullopt};
  if (auto v = zero_tail_head(x)) out.osc_lower = pair_.plus(*v) - pair_.minus(*v);
  return out;
}

// Second reduction.

Rational SecondReductionLabels::label(const BitWord& t) const {
  Rational e = half_pow(t.size() + 1);
  return ones_count(t).parity == Parity::even ? 1 - e : e;
}

RatInterval SecondReductionLabels::spread(const BitWord&) const { return RatInterval(0, 1); }

std::optional<LabelMap::Tail> SecondReductionLabels::tail(const Branch& x, std::size_t k) const {
  auto head = zero_tail_head(x);
  if (!head) {
    if (x.in_N()) return Tail{RatInterval(0, 1), Rational(1)};
    return Tail{RatInterval(0, 1), std::nullopt};
  }
  std::size_t big = std::max(k, head->size());
  BitWord xp = x.prefix(big);
  Rational e = half_pow(big + 1);
  RatInterval out = ones_count(xp).parity == Parity::even ? RatInterval(1 - e, 1) : RatInterval(0, e);
  for (std::size_t j = k; j < big; ++j) out = hull(out, RatInterval::point(label(xp.prefix(j))));
  return Tail{out, std::nullopt};
}

// Third reduction.

Rational ClaimApprox::phi(const NatWord& u) const {
  if (u.empty()) return psi_.at(u);
  std::size_t parent = u.size() - 1;
  Rational shift = half_pow(parent + 2);
  if (u[parent] % 2) shift = -shift;
  return shift_inside(psi_.at(u), shift);
}

Rational ClaimApprox::minus(const NatWord& u) const { return shift_inside(phi(u), -half_pow(u.size() + 2)); }
Rational ClaimApprox::plus(const NatWord& u) const { return shift_inside(phi(u), half_pow(u.size() + 2)); }

Rational ThirdReductionLabels::label(const BitWord& s) const {
  auto [t, v] = halves(s);
  auto tc = ones_count(t);
  BitWord w = v.prefix(tc.ell);
  if (s.size() % 2) return phi_.phi(decode_hat(w.append(1)));
  NatWord u = decode_hat(w);
  return even(head_tail(t).zero_tail) ? phi_.plus(u) : phi_.minus(u);
}

RatInterval ThirdReductionLabels::spread(const BitWord& s) const {
  auto [t, v] = halves(s);
  NatWord u = decode_hat(v.prefix(ones_count(t).ell));
  auto j = phi_.psi().function().interval_at(u);
  Rational w = 5 * half_pow(u.size() + 2);
  return clamp_unit(RatInterval(j.lo - w, j.hi + w));
}

std::optional<LabelMap::Tail> ThirdReductionLabels::tail(const Branch& w, std::size_t k) const {
  Tail out{spread(w.prefix(k)), std::nullopt};
  auto xy = split(w);
  if (!xy) return out;
  if (auto head = zero_tail_head(xy->first)) {
    NatWord u = decode_hat(xy->second.prefix(ones_count(*head).ell));
    out.osc_lower = phi_.plus(u) - phi_.minus(u);
  }
  return out;
}

OffspringPtr first_reduction(const FunctionPresentation& c, const TreePresentation& t, Variant v) {
  return offspring_build(t, std::make_shared<FirstReductionLabels>(c), v);
}

OffspringPtr second_reduction(const TreePresentation& t, Variant v) {
  return offspring_build(t, std::make_shared<SecondReductionLabels>(), v);
}

OffspringPtr third_reduction(const FunctionPresentation& c, const TreePresentation& t, Variant v) {
  if (!c.on_full_baire_tree()) throw DomainError("third reduction needs a function on the full Baire tree");
  if (!c.lipschitz()) throw DomainError("third reduction needs a Lipschitz presentation; reparametrize first");
  for (const auto& r : d_spread_report(c, 2, 3, 8))
    if (!r.ok)
      throw DomainError("d_{k,u} spread at u = \"" + r.u.str() + "\" is " + to_string(r.spread) + ", below " +
                        to_string(r.required));
  return offspring_build(tree_interleave(t, TreePresentation::full()), std::make_shared<ThirdReductionLabels>(c), v);
}

std::vector<SpreadCheck> d_spread_report(const FunctionPresentation& c, std::size_t depth, std::size_t fanout,
                                         std::uint64_t k_max) {
  ClaimApprox phi(c);
  std::vector<SpreadCheck> out;
  for (const auto& u : nat_words(depth, fanout)) {
    Rational lo = phi.d(0, u), hi = lo;
    for (std::uint64_t k = 1; k <= k_max; ++k) {
      Rational d = phi.d(k, u);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    SpreadCheck r{u, hi - lo, half_pow(u.size() + 2)};
    r.ok = r.spread >= r.required;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SiblingCheck> sibling_spread_report(const FunctionPresentation& c, std::size_t depth, std::size_t fanout) {
  ClaimApprox phi(c);
  std::vector<SiblingCheck> out;
  for (const auto& u : nat_words(depth, fanout)) {
    Rational lo = phi.phi(u.append(0)), hi = lo;
    for (std::size_t k = 1; k < fanout; ++k) {
      Rational p = phi.phi(u.append(k));
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    SiblingCheck r{u, hi - lo, pow2(1 - static_cast<long>(u.size()))};
    r.ok = r.worst < r.bound;
    out.push_back(std::move(r));
  }
  return out;
}

// Solid sets.

std::optional<Rational> QEnumeration::first_in(const RatInterval& j) const {
  if (j.lo < j.hi) {
    if (dyadics_) {
      if (j.hi <= 0 || j.lo >= 1) return std::nullopt;
      return least_dyadic_in(std::max<Rational>(0, j.lo), std::min<Rational>(1, j.hi)).value();
    }
    for (const auto& q : list_)
      if (j.lo < q && q < j.hi) return q;
    return std::nullopt;
  }
  if (dyadics_) {
    if (j.lo > 0 && j.lo < 1 && is_dyadic(j.lo)) return j.lo;
    return std::nullopt;
  }
  for (const auto& q : list_)
    if (q == j.lo) return q;
  return std::nullopt;
}

namespace {

// ψ(t) = pick(hat t), spread the closure of J_{hat t}; labels are frozen once t passes hd(x).
class SolidLabels final : public LabelMap {
 public:
  using Pick = std::function<Rational(const NatWord&)>;
  SolidLabels(FunctionPresentation c, Pick pick) : c_(std::move(c)), pick_(std::move(pick)) {}

  Rational label(const BitWord& t) const override { return pick_(decode_hat(t)); }
  RatInterval spread(const BitWord& t) const override { return c_.interval_at(decode_hat(t)); }
  std::optional<Tail> tail(const Branch& x, std::size_t k) const override {
    if (auto head = zero_tail_head(x); head && head->size() <= k) return Tail{RatInterval::point(label(x.prefix(k))), {}};
    return Tail{spread(x.prefix(k)), std::nullopt};
  }

 private:
  FunctionPresentation c_;
  Pick pick_;
};

constexpr std::size_t kSolidCheckDepth = 3;
constexpr std::size_t kSolidCheckFanout = 3;

}  // namespace

OffspringPtr solid_analytic(const FunctionPresentation& c, const QEnumeration& q, Variant v) {
  if (!c.on_full_baire_tree()) throw DomainError("solid_analytic needs a function on the full Baire tree");
  auto pick = [c, q](const NatWord& u) {
    auto r = q.first_in(c.interval_at(u));
    if (!r || *r <= 0 || *r >= 1)
      throw DomainError("no enumerated value of Q in (0;1) meets J_u at u = \"" + u.str() + "\"");
    return *r;
  };
  for (const auto& u : nat_words(kSolidCheckDepth, kSolidCheckFanout)) pick(u);
  return offspring_build(TreePresentation::full(), std::make_shared<SolidLabels>(c, pick), v);
}

namespace {

std::optional<Rational> fresh_dyadic(const RatInterval& j, const std::set<Rational>& used) {
  constexpr unsigned long kMaxExponent = 256;
  Rational lo = std::max<Rational>(0, j.lo), hi = std::min<Rational>(1, j.hi);
  for (unsigned long n = 1; n <= kMaxExponent; ++n) {
    Rational scale = pow2(static_cast<long>(n));
    Rational a = lo * scale;
    mpz_class k = a.get_num() / a.get_den() + 1;
    if (k % 2 == 0) k += 1;
    for (;; k += 2) {
      Rational q = Rational(k) / scale;
      if (q >= hi) break;
      if (!used.count(q)) return q;
    }
  }
  return std::nullopt;
}

}  // namespace

InjectiveBuild solid_injective(const FunctionPresentation& c, const std::vector<Rational>& q_list, std::size_t depth,
                               std::size_t width) {
  if (!c.on_full_baire_tree()) throw DomainError("solid_injective needs a function on the full Baire tree");
  for (const auto& q : q_list)
    if (q <= 0 || q >= 1) throw DomainError("Q values must lie in (0;1), got " + to_string(q));
  auto labels = std::make_shared<std::map<NatWord, Rational>>();
  std::set<Rational> used;
  for (const auto& u : nat_words(depth, width)) {
    auto j = c.interval_at(u);
    if (!(j.lo < j.hi)) throw DomainError("J_u is degenerate at u = \"" + u.str() + "\"");
    std::optional<Rational> pick;
    for (const auto& q : q_list)
      if (j.lo < q && q < j.hi && !used.count(q)) {
        pick = q;
        break;
      }
    if (!pick) pick = fresh_dyadic(j, used);
    if (!pick) throw DomainError("no unused value meets J_u at u = \"" + u.str() + "\"");
    used.insert(*pick);
    (*labels)[u] = *pick;
  }
  InjectiveBuild out;
  out.labels = *labels;
  for (const auto& q : q_list)
    if (!used.count(q) && std::find(out.leftovers.begin(), out.leftovers.end(), q) == out.leftovers.end())
      out.leftovers.push_back(q);
  std::set<Rational> distinct;
  for (const auto& [u, r] : out.labels) distinct.insert(r);
  out.distinct = distinct.size() == out.labels.size();
  auto pick = [c, labels](const NatWord& u) {
    auto it = labels->find(u);
    if (it != labels->end()) return it->second;
    auto j = c.interval_at(u);
    return least_dyadic_in(std::max<Rational>(0, j.lo), std::min<Rational>(1, j.hi)).value();
  };
  OraclePtr k0 = offspring_build(TreePresentation::full(), std::make_shared<SolidLabels>(c, pick));
  OraclePtr k1 = solid_countable_range(out.leftovers);
  out.oracle = compose({{BitWord{0}, k0}, {BitWord{1}, k1}});
  return out;
}

OffspringPtr uniformity_pipeline(const ProductTreePresentation& pt, const Branch& z, const FunctionPresentation& c,
                                 std::size_t depth) {
  if (pt.arity() != 3) throw DomainError("uniformity pipeline needs a product tree of arity 3");
  auto sec = section(pt, z.prefix(depth), depth);
  auto f = pair_interleave(sec);
  auto h = third_reduction(c, TreePresentation::full());
  return offspring_prune(*h, f);
}

}  // namespace cantor
