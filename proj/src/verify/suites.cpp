#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "cantor/construct.hpp"
#include "cantor/errors.hpp"
#include "cantor/reduce.hpp"
#include "cantor/reference.hpp"
#include "cantor/verify.hpp"

namespace cantor {

using nlohmann::json;

json SuiteResult::to_json() const {
  return json{{"suite", name},   {"seed", seed},     {"cases", cases},
              {"passed", passed}, {"failed", failed}, {"failures", failures}};
}

namespace {

using Rng = std::mt19937_64;

constexpr std::size_t kKeptFailures = 8;

class Tally {
 public:
  explicit Tally(SuiteResult& r) : r_(r) {}
  // One case: every check inside must hold.
  void record(bool ok, const std::string& what) {
    ++r_.cases;
    if (ok) {
      ++r_.passed;
    } else {
      ++r_.failed;
      if (r_.failures.size() < kKeptFailures) r_.failures.push_back(what);
    }
  }
  // Runs a case body; exceptions count as failures.
  void run(const std::string& what, const std::function<bool()>& body) {
    bool ok = false;
    std::string msg = what;
    try {
      ok = body();
    } catch (const std::exception& e) {
      msg += ": " + std::string(e.what());
    }
    record(ok, msg);
  }

 private:
  SuiteResult& r_;
};

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

BitWord random_word(Rng& rng, std::size_t min_len, std::size_t max_len) {
  std::size_t n = uniform(rng, min_len, max_len);
  std::vector<std::uint8_t> bits;
  for (std::size_t i = 0; i < n; ++i) bits.push_back(static_cast<std::uint8_t>(uniform(rng, 0, 1)));
  return BitWord(std::move(bits));
}

Rational random_rational(Rng& rng) {
  auto q = static_cast<long>(uniform(rng, 2, 1000000));
  auto p = static_cast<long>(uniform(rng, 1, static_cast<std::uint64_t>(q - 1)));
  return ratio(p, q);
}

Rational random_dyadic_label(Rng& rng, unsigned max_exp) {
  unsigned n = static_cast<unsigned>(uniform(rng, 1, max_exp));
  std::uint64_t k = 2 * uniform(rng, 0, (std::uint64_t{1} << (n - 1)) - 1) + 1;
  return Rational(static_cast<long>(k)) * pow2(-static_cast<long>(n));
}

std::set<BitWord> random_nodes(Rng& rng, std::size_t max_depth) {
  std::set<BitWord> nodes{BitWord{}};
  std::vector<BitWord> stack{BitWord{}};
  while (!stack.empty()) {
    BitWord t = stack.back();
    stack.pop_back();
    if (t.size() >= max_depth || uniform(rng, 0, 9) < 3) continue;
    auto shape = uniform(rng, 0, 2);
    for (int i = 0; i < 2; ++i)
      if (shape == 2 || static_cast<int>(shape) == i) {
        nodes.insert(t.append(i));
        stack.push_back(t.append(i));
      }
  }
  return nodes;
}

std::vector<BitWord> leaves_of(const std::set<BitWord>& nodes) {
  std::vector<BitWord> out;
  for (const auto& n : nodes)
    if (!nodes.count(n.append(0)) && !nodes.count(n.append(1))) out.push_back(n);
  return out;
}

Policy random_policy(Rng& rng) {
  switch (uniform(rng, 0, 2)) {
    case 0:
      return Policy::zeros();
    case 1:
      return Policy::full();
    default:
      return Policy::periodic(random_word(rng, 1, 3));
  }
}

std::map<BitWord, Rational> random_labels(Rng& rng, const std::set<BitWord>& nodes, std::size_t max_depth,
                                          unsigned max_exp) {
  std::map<BitWord, Rational> labels;
  for (const auto& n : nodes)
    if (n.size() <= max_depth && uniform(rng, 0, 2) > 0) labels[n] = random_dyadic_label(rng, max_exp);
  return labels;
}

bool within(const RatInterval& v, const Rational& center, const Rational& tol) {
  return center - tol <= v.lo && v.hi <= center + tol;
}

// Suites.

void golden(Tally& t, Rng&, std::size_t) {
  t.run("mu(U1) = 1/3", [] {
    auto u1 = DualisticOracle::w_f(Rational(1, 3));
    auto b = u1->local_bounds(BitWord{}, kDefaultBudget);
    return ref::u1_measure() == Rational(1, 3) && b == RatInterval::point(Rational(1, 3));
  });
  t.run("mu(U2) = 2/3", [] {
    for (std::size_t len : {1, 2, 3, 8, 17, 24}) {
      ClopenSet u2 = u2_truncated(len);
      for (const auto& w : u2.words())
        if (!ref::inside_u2(w)) return false;
      if (u2.measure() + ref::u2_tail(len) != Rational(2, 3)) return false;
    }
    return true;
  });
  t.run("U1 and U2 fill every spine cylinder", [] {
    auto u1 = DualisticOracle::w_f(Rational(1, 3));
    for (std::size_t n = 0; n <= 12; ++n) {
      BitWord s = BitWord::constant(n, 0);
      Rational a = u1->local_bounds(s, 0).lo;
      Rational b = localize(u2_truncated(60), s).measure();
      if (a + b > 1 || 1 - (a + b) > pow2(-40)) return false;
    }
    return true;
  });
}

void dualistic_measure(Tally& t, Rng& rng, std::size_t cases) {
  constexpr std::size_t kFChecks = 24;
  for (std::size_t i = 0; i < cases; ++i) {
    Rational r = random_rational(rng);
    t.run("dualistic_of_measure(" + to_string(r) + ")", [&] {
      auto a = DualisticOracle::of_measure(r);
      std::vector<BitWord> v = a->clopen_part().words();
      for (const auto& w : v)
        if (!ref::inside_u2(w)) return false;
      auto series = ref::w_f_series(r - ref::antichain_measure(v), kFChecks);
      for (std::size_t n = 1; n <= kFChecks; ++n) {
        BitWord tn = BitWord::constant(n, 0) + BitWord::constant(n, 1);
        if (a->local_bounds(tn, 0) != RatInterval::point(series.f[n - 1])) return false;
      }
      Rational total = ref::antichain_measure(v) + series.sum;
      return total == r && a->local_bounds(BitWord{}, kDefaultBudget) == RatInterval::point(r);
    });
  }
}

void spine_density(Tally& t, Rng& rng, std::size_t cases) {
  for (std::size_t i = 0; i < cases; ++i) {
    Rational r = random_rational(rng);
    t.run("spine trace of dualistic_of_measure(" + to_string(r) + ")", [&] {
      auto a = DualisticOracle::of_measure(r);
      auto tr = trace(*a, Branch(Lasso::zeros()), 31, kDefaultBudget);
      std::vector<BitWord> v = a->clopen_part().words();
      for (std::size_t m = 10; m <= 30; ++m) {
        BitWord s = BitWord::constant(m, 0);
        Rational part = 0;
        for (const auto& w : v) {
          if (w.is_prefix_of(s)) part = 1;
          else if (s.is_prefix_of(w)) part += pow2(static_cast<long>(m) - static_cast<long>(w.size()));
        }
        const auto& b = tr[m].bounds;
        if (b.width() != 0) return false;
        if (b.hi > Rational(4, 3) * pow2(-static_cast<long>(m)) + part) return false;
      }
      return true;
    });
  }
}

void branch_lemma(Tally& t, Rng& rng, std::size_t cases) {
  constexpr std::size_t kMaxK = 7;
  for (std::size_t i = 0; i < cases; ++i) {
    auto nodes = random_nodes(rng, 7);
    std::map<BitWord, Policy> policies;
    for (const auto& l : leaves_of(nodes)) policies[l] = random_policy(rng);
    auto labels = random_labels(rng, nodes, 7, 6);
    Rational def = random_dyadic_label(rng, 6);
    t.run("branch lemma case " + std::to_string(i), [&] {
      auto tree = TreePresentation::explicit_tree(nodes, policies);
      auto lab = std::make_shared<ExplicitLabels>(labels, def);
      auto a = offspring_build(tree, lab);
      for (const auto& [leaf, p] : policies) {
        auto x = tree.continuation(leaf);
        if (!x) return false;
        auto tr = trace(*a, Branch::stretch(Branch(*x)), triangular(kMaxK) + 1, kDefaultBudget);
        for (std::size_t k = 0; k <= kMaxK; ++k) {
          const auto& b = tr[triangular(k)].bounds;
          Rational psi = lab->label(x->prefix(k));
          Rational gap = b.midpoint() - psi;
          if (gap < 0) gap = -gap;
          if (b.width() > pow2(-10) || gap > pow2(-static_cast<long>(k)) + b.width()) return false;
        }
      }
      return true;
    });
  }
}

void brute_force(Tally& t, Rng& rng, std::size_t cases) {
  constexpr std::size_t kDepth = 14;
  for (std::size_t i = 0; i < cases; ++i) {
    auto nodes = random_nodes(rng, 4);
    auto labels = random_labels(rng, nodes, 3, 4);
    Rational def = random_dyadic_label(rng, 4);
    t.run("brute-force case " + std::to_string(i), [&] {
      std::map<BitWord, Policy> policies;
      for (const auto& l : leaves_of(nodes)) policies[l] = Policy::full();
      auto a = offspring_build(TreePresentation::explicit_tree(nodes, policies),
                               std::make_shared<ExplicitLabels>(labels, def));
      ref::BruteTree bt{nodes};
      for (std::size_t len = 0; len <= 6; ++len)
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << len); ++b) {
          std::vector<std::uint8_t> bits;
          for (std::size_t j = 0; j < len; ++j) bits.push_back(static_cast<std::uint8_t>((b >> j) & 1));
          BitWord s(std::move(bits));
          Rational expect = ref::brute_offspring(bt, labels, def, s, kDepth);
          if (a->local_bounds(s, kDefaultBudget) != RatInterval::point(expect)) return false;
        }
      return true;
    });
  }
}

struct PresetRef {
  FunctionPresentation c;
  std::string preset;
  std::vector<Rational> params;
};

std::vector<PresetRef> shipped_refs() {
  return {{FunctionPresentation::constant(Rational(1, 2)), "constant", {Rational(1, 2)}},
          {FunctionPresentation::interval(Rational(1, 4), Rational(3, 4)), "interval", {Rational(1, 4), Rational(3, 4)}},
          {FunctionPresentation::injective(Rational(1, 8)), "injective", {Rational(1, 8)}}};
}

bool in_approx_interval(const Rational& phi, const RatInterval& j, std::size_t len) {
  if (j.lo < j.hi) return j.lo < phi && phi < j.hi;
  Rational d = phi - j.lo;
  if (d < 0) d = -d;
  return d < pow2(-static_cast<long>(len) - 1);
}

std::vector<BitWord> all_words(std::size_t max_len) {
  std::vector<BitWord> out{BitWord{}};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].size() < max_len) {
      out.push_back(out[i].append(0));
      out.push_back(out[i].append(1));
    }
  return out;
}

void approximation(Tally& t, Rng&, std::size_t) {
  constexpr std::size_t kDepth = 10;
  constexpr std::uint64_t kFanout = 3;
  auto words = all_words(kDepth);
  for (const auto& p : shipped_refs()) {
    auto phi = canonical_approx(p.c);
    auto pair = approx_pair(p.c);
    t.run(p.preset + ": phi(t) in I_t on binary nodes to depth 10", [&] {
      for (const auto& w : words) {
        auto j = ref::preset_cantor_interval(p.preset, p.params, w);
        if (p.c.cantor_interval_at(w) != j) return false;
        if (!in_approx_interval(phi.at(w), j, w.size())) return false;
      }
      return true;
    });
    t.run(p.preset + ": approx_pair gap to depth 10", [&] {
      for (const auto& w : words) {
        Rational lo = pair.minus(w), hi = pair.plus(w);
        if (!(0 < lo && lo < hi && hi < 1 && hi - lo < pow2(-static_cast<long>(w.size())))) return false;
      }
      return true;
    });
    t.run(p.preset + ": phi(u) in I_u and sibling bound on nat words to depth 10", [&] {
      std::vector<NatWord> us{NatWord{}};
      std::vector<std::size_t> first_child(1, 0);
      for (std::size_t i = 0; i < us.size(); ++i) {
        first_child[i] = us.size();
        if (us[i].size() < kDepth)
          for (std::uint64_t k = 0; k < kFanout; ++k) {
            us.push_back(us[i].append(k));
            first_child.push_back(0);
          }
      }
      std::vector<Rational> values;
      for (const auto& u : us) {
        auto j = ref::preset_cantor_interval(p.preset, p.params, ref::encode_check(u));
        values.push_back(phi.at(u));
        if (p.c.interval_at(u) != j || !in_approx_interval(values.back(), j, u.size())) return false;
      }
      for (std::size_t i = 0; i < us.size(); ++i) {
        if (us[i].size() >= kDepth) continue;
        for (std::uint64_t h = 0; h < kFanout; ++h)
          for (std::uint64_t k = h + 1; k < kFanout; ++k) {
            Rational d = values[first_child[i] + h] - values[first_child[i] + k];
            if (d < 0) d = -d;
            if (d >= pow2(-static_cast<long>(us[i].size()))) return false;
          }
      }
      return true;
    });
  }
}

Branch stretched(const Lasso& x) { return Branch::stretch(Branch(x)); }

void second_reduction_suite(Tally& t, Rng&, std::size_t) {
  SecondReductionLabels g;
  t.run("labels at <>, <1>, <1,1>", [&] {
    return g.label(BitWord{}) == Rational(1, 2) && g.label(BitWord{1}) == Rational(1, 4) &&
           g.label(BitWord{1, 1}) == Rational(7, 8);
  });
  t.run("parity law and complement law to length 8", [&] {
    for (const auto& w : all_words(8)) {
      Rational e = pow2(-static_cast<long>(w.size()) - 1);
      Rational expect = ref::ones(w) % 2 == 0 ? 1 - e : e;
      if (g.label(w) != expect) return false;
      BitWord flip = w.empty() ? w : w.prefix(w.size() - 1).append(1 - w[w.size() - 1]);
      if (!w.empty() && g.label(w) + g.label(flip) != 1) return false;
    }
    return true;
  });
  t.run("full tree at stretch(1^w) is blurry with delta >= 1 - 2^-4 by depth tau_12", [] {
    auto a = second_reduction(TreePresentation::full());
    auto p = classify(*a, stretched(Lasso::ones()), pow2(-8), triangular(12));
    return p.verdict == PointClassification::Verdict::blurry && p.osc_lower >= 1 - pow2(-4);
  });
  t.run("zeros tree at stretch(0^w) converges into [1 - 2^-8, 1]", [] {
    auto a = second_reduction(TreePresentation::zeros());
    auto p = classify(*a, stretched(Lasso::zeros()), pow2(-8), triangular(12));
    return p.verdict == PointClassification::Verdict::converges && p.value.lo >= 1 - pow2(-8) && p.value.hi <= 1;
  });
  t.run("full tree at stretch(<1>0^w) converges into [0, 2^-8]", [] {
    auto a = second_reduction(TreePresentation::full());
    auto p = classify(*a, stretched(Lasso(BitWord{1}, BitWord{0})), pow2(-8), triangular(12));
    return p.verdict == PointClassification::Verdict::converges && p.value.lo >= 0 && p.value.hi <= pow2(-8);
  });
}

Lasso random_lasso(Rng& rng, bool in_n) {
  BitWord head = random_word(rng, 0, 3);
  if (!in_n) return Lasso(head.append(1), BitWord{0});
  BitWord period = random_word(rng, 1, 3);
  if (period.is_constant() && period[0] == 0) period = period.prefix(period.size() - 1).append(1);
  return Lasso(head, period);
}

void first_reduction_suite(Tally& t, Rng& rng, std::size_t cases) {
  auto c = FunctionPresentation::constant(Rational(1, 2));
  FirstReductionLabels psi(c);
  auto pair = approx_pair(c);
  t.run("labels at <1> and <1,0>", [&] {
    return psi.label(BitWord{1}) == Rational(3, 8) && psi.label(BitWord{1, 0}) == Rational(5, 8);
  });
  t.run("parity law to length 8", [&] {
    for (const auto& w : all_words(8)) {
      BitWord h = ref::head(w);
      Rational expect = ref::zero_tail(w) % 2 == 0 ? pair.minus(h) : pair.plus(h);
      if (psi.label(w) != expect) return false;
    }
    return true;
  });
  auto a = first_reduction(c, TreePresentation::full());
  t.run("0^w is blurry with delta >= 1/4", [&] {
    auto p = classify(*a, stretched(Lasso::zeros()), pow2(-6), 80);
    return p.verdict == PointClassification::Verdict::blurry && p.osc_lower >= Rational(1, 4);
  });
  for (std::size_t i = 0; i < cases; ++i) {
    Lasso x = random_lasso(rng, true);
    t.run("periodic N branch " + x.str() + " converges within 2^-6 of 1/2", [&] {
      auto p = classify(*a, stretched(x), pow2(-6), 80);
      return p.verdict == PointClassification::Verdict::converges && within(p.value, Rational(1, 2), pow2(-6));
    });
  }
}

void third_reduction_suite(Tally& t, Rng&, std::size_t) {
  for (const auto& p : shipped_refs()) {
    t.run(p.preset + ": sibling spread < 2^(1-|u|)", [&] {
      auto rep = sibling_spread_report(p.c, 3, 3);
      return std::all_of(rep.begin(), rep.end(), [](const SiblingCheck& r) { return r.ok; });
    });
    t.run(p.preset + ": d_{k,u} spread >= 2^-(2+|u|)", [&] {
      ClaimApprox phi(p.c);
      auto rep = d_spread_report(p.c, 3, 3, 8);
      for (const auto& r : rep) {
        Rational lo = phi.d(0, r.u), hi = lo;
        for (std::uint64_t k = 1; k <= 8; ++k) {
          lo = std::min(lo, phi.d(k, r.u));
          hi = std::max(hi, phi.d(k, r.u));
        }
        if (hi - lo < pow2(-2 - static_cast<long>(r.u.size())) || !r.ok) return false;
      }
      return !rep.empty();
    });
    t.run(p.preset + ": (1^w, 1^w) converges within 2^-5 of c(0,0,...)", [&] {
      auto h = third_reduction(p.c, TreePresentation::full());
      auto z = Branch::stretch(Branch::interleave(Lasso::ones(), Lasso::ones()));
      auto res = classify(*h, z, pow2(-5), 200);
      return res.verdict == PointClassification::Verdict::converges &&
             within(res.value, ref::preset_at_zero(p.preset, p.params), pow2(-5));
    });
  }
  t.run("case split labels at <1,1> and <1,1,0>", [] {
    ThirdReductionLabels l(FunctionPresentation::interval(Rational(1, 4), Rational(3, 4)));
    return l.label(BitWord{1, 1}) == l.phi().plus(NatWord{0}) && l.label(BitWord{1, 1, 0}) == l.phi().phi(NatWord{0, 0});
  });
}

ClopenSet random_clopen(Rng& rng) {
  std::vector<BitWord> words;
  auto n = uniform(rng, 0, 5);
  for (std::uint64_t i = 0; i < n; ++i) words.push_back(random_word(rng, 1, 6));
  return ClopenSet::from_words(std::move(words));
}

void clopen_laws(Tally& t, Rng& rng, std::size_t cases) {
  constexpr std::size_t kDepth = 6;
  auto count = [](const std::function<bool(const BitWord&)>& in) {
    long hits = 0;
    for (std::uint64_t b = 0; b < (1u << kDepth); ++b) {
      std::vector<std::uint8_t> bits;
      for (std::size_t j = 0; j < kDepth; ++j) bits.push_back(static_cast<std::uint8_t>((b >> j) & 1));
      if (in(BitWord(std::move(bits)))) ++hits;
    }
    return ratio(hits, 1L << kDepth);
  };
  auto covers = [](const ClopenSet& a, const BitWord& x) {
    return std::any_of(a.words().begin(), a.words().end(), [&](const BitWord& w) { return w.is_prefix_of(x); });
  };
  for (std::size_t i = 0; i < cases; ++i) {
    ClopenSet a = random_clopen(rng), b = random_clopen(rng);
    t.run("inclusion-exclusion pair " + std::to_string(i), [&] {
      Rational ma = count([&](const BitWord& x) { return covers(a, x); });
      Rational mb = count([&](const BitWord& x) { return covers(b, x); });
      Rational mu = count([&](const BitWord& x) { return covers(a, x) || covers(b, x); });
      Rational mi = count([&](const BitWord& x) { return covers(a, x) && covers(b, x); });
      auto u = set_union(a, b), n = set_intersection(a, b);
      return a.measure() == ma && b.measure() == mb && u.measure() == mu && n.measure() == mi &&
             u.measure() + n.measure() == a.measure() + b.measure();
    });
  }
  for (std::size_t i = 0; i < cases / 2; ++i) {
    ClopenSet u;
    while (u.is_empty()) u = random_clopen(rng);
    Rational mu = u.measure();
    Rational d = 0;
    while (d <= 0 || d >= mu) d = ratio(static_cast<long>(uniform(rng, 1, 255)), 256);
    t.run("subset_of_measure case " + std::to_string(i), [&] {
      auto v = subset_of_measure(u, d);
      for (const auto& w : v.words())
        if (!std::any_of(u.words().begin(), u.words().end(), [&](const BitWord& x) { return x.is_prefix_of(w); }))
          return false;
      return ref::antichain_measure(v.words()) == d;
    });
  }
}

void countable_range(Tally& t, Rng&, std::size_t) {
  std::vector<Rational> s{Rational(1, 3), Rational(1, 2), Rational(2, 3)};
  auto a = solid_countable_range(s);
  auto marks = a->designated();
  std::vector<Rational> realized;
  for (const auto& d : marks) {
    t.run("designated point " + d.note, [&] {
      auto p = classify(*a, d.z, pow2(-8), 80);
      if (p.verdict != PointClassification::Verdict::converges) return false;
      if (d.density == RatInterval::point(0)) return within(p.value, Rational(0), pow2(-8)) && p.value.lo >= 0;
      realized.push_back(d.density.lo);
      return d.density.is_point() && within(p.value, d.density.lo, pow2(-8));
    });
  }
  t.run("each value realized at exactly one designated point", [&] {
    auto sorted = realized;
    std::sort(sorted.begin(), sorted.end());
    return sorted == s;
  });
  t.run("solid_injective labels are pairwise distinct and inside J_u", [] {
    auto c = FunctionPresentation::injective(Rational(1, 8));
    auto b = solid_injective(c, {Rational(1, 3), Rational(1, 2), Rational(2, 3)}, 6, 2);
    std::set<Rational> seen;
    for (const auto& [u, r] : b.labels) {
      auto j = ref::preset_cantor_interval("injective", {Rational(1, 8)}, ref::encode_check(u));
      if (!(j.lo < r && r < j.hi) || !seen.insert(r).second) return false;
    }
    return b.distinct && b.labels.size() == 127;
  });
}

std::vector<NatWord> nat_words_with_sum(std::size_t max_sum, std::size_t max_len) {
  std::vector<NatWord> out{NatWord{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t sum = 0;
    for (auto e : out[i].entries()) sum += e;
    if (out[i].size() >= max_len) continue;
    for (std::uint64_t k = 0; sum + k <= max_sum; ++k) out.push_back(out[i].append(k));
  }
  return out;
}

void codec(Tally& t, Rng& rng, std::size_t cases) {
  t.run("head/tail recomposition, hat and stretch on words of length <= 10", [] {
    for (const auto& s : all_words(10)) {
      auto ht = head_tail(s);
      if (ht.head != ref::head(s) || ht.zero_tail != ref::zero_tail(s)) return false;
      if (ht.head + BitWord::constant(ht.zero_tail, 0) != s) return false;
      if (decode_hat(s) != ref::decode_hat(s)) return false;
      if (stretch(s).size() != triangular(s.size())) return false;
      if (BitWord::parse(s.str()) != s) return false;
      if (ones_count(s).ell != ref::ones(s)) return false;
    }
    return true;
  });
  t.run("check/hat round trip on nat words with sum <= 8", [] {
    for (const auto& u : nat_words_with_sum(8, 8)) {
      BitWord c = encode_check(u);
      if (c != ref::encode_check(u) || decode_hat(c) != u || ones_count(c).ell != u.size()) return false;
      if (NatWord::parse(u.str()) != u) return false;
    }
    return true;
  });
  t.run("ltimes arity guard and length", [] {
    auto us = nat_words_with_sum(3, 4);
    for (const auto& s : all_words(5))
      for (const auto& u : us) {
        if (u.size() == ref::ones(s)) {
          std::size_t len = s.size();
          for (auto e : u.entries()) len += e + 1;
          if (ltimes(s, u).size() != len) return false;
        } else {
          try {
            ltimes(s, u);
            return false;
          } catch (const DomainError&) {
          }
        }
      }
    return true;
  });
  for (std::size_t i = 0; i < cases; ++i) {
    Rational r = random_rational(rng);
    Lasso x(random_word(rng, 0, 5), random_word(rng, 1, 4));
    auto nodes = random_nodes(rng, 4);
    std::map<BitWord, Policy> policies;
    for (const auto& l : leaves_of(nodes)) policies[l] = random_policy(rng);
    t.run("json and text round trips " + std::to_string(i), [&] {
      if (parse_rational(to_string(r)) != r) return false;
      auto d = Dyadic::from_rational(random_dyadic_label(rng, 20));
      if (Dyadic::parse(d.str()).value() != d.value()) return false;
      if (dyadic_at_rank(dyadic_rank(d)).value() != d.value()) return false;
      Branch b = Branch::stretch(Branch::interleave(x, Lasso::ones()));
      if (Branch::from_json(b.to_json()).prefix(60) != b.prefix(60)) return false;
      auto tree = TreePresentation::explicit_tree(nodes, policies);
      auto back = TreePresentation::from_json(tree.to_json());
      for (const auto& w : all_words(8))
        if (back.member(w) != tree.member(w)) return false;
      return true;
    });
  }
}

void census(Tally& t, Rng& rng, std::size_t cases) {
  for (std::size_t i = 0; i < cases; ++i) {
    auto nodes = random_nodes(rng, 4);
    std::map<BitWord, Policy> policies;
    for (const auto& l : leaves_of(nodes)) policies[l] = random_policy(rng);
    t.run("census case " + std::to_string(i), [&] {
      auto tree = TreePresentation::explicit_tree(nodes, policies);
      return tree.census_N() == ref::census_brute(tree, 6, 3, 12);
    });
  }
}

using SuiteFn = void (*)(Tally&, Rng&, std::size_t);

struct Entry {
  SuiteInfo info;
  SuiteFn fn;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r{
      {{"golden", 1, "mu(U1) = 1/3 and mu(U2) = 2/3 exactly"}, golden},
      {{"dualistic-measure", 500, "dualistic_of_measure against the series oracle"}, dualistic_measure},
      {{"spine-density", 500, "spine traces of dualistic sets, depths 10..30"}, spine_density},
      {{"branch-lemma", 200, "trace midpoints along stretched branches track the labels"}, branch_lemma},
      {{"brute-force", 40, "offspring local measures against cylinder enumeration at depth 14"}, brute_force},
      {{"approximation", 1, "canonical approximations of the shipped presentations"}, approximation},
      {{"second-reduction", 1, "labels and classifications of the second reduction"}, second_reduction_suite},
      {{"first-reduction", 20, "labels and classifications of the first reduction"}, first_reduction_suite},
      {{"third-reduction", 1, "spread certificates and convergence of the third reduction"}, third_reduction_suite},
      {{"clopen-laws", 1000, "inclusion-exclusion and subset_of_measure"}, clopen_laws},
      {{"countable-range", 1, "designated points of the countable-range set"}, countable_range},
      {{"codec", 100, "sequence codecs and serialization round trips"}, codec},
      {{"census", 100, "census of N-branches against path search"}, census},
  };
  return r;
}

}  // namespace

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> out = [] {
    std::vector<SuiteInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return out;
}

bool has_suite(const std::string& name) {
  return std::any_of(registry().begin(), registry().end(), [&](const Entry& e) { return e.info.name == name; });
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::size_t cases) {
  for (const auto& e : registry()) {
    if (e.info.name != name) continue;
    SuiteResult r;
    r.name = name;
    r.seed = seed;
    Rng rng(seed);
    Tally t(r);
    e.fn(t, rng, cases == 0 ? e.info.default_cases : cases);
    return r;
  }
  throw DomainError("unknown suite \"" + name + "\"");
}

}  // namespace cantor
