#pragma once

// The three tree-to-compact-set reductions, solid sets with prescribed range, and the uniformity pipeline.

#include <map>
#include <optional>
#include <vector>

#include "cantor/construct.hpp"

namespace cantor {

/// ψ(t) = φ⁻(hd t) if zt(t) is even, φ⁺(hd t) if odd, over the Cantor view of c.
class FirstReductionLabels final : public LabelMap {
 public:
  explicit FirstReductionLabels(FunctionPresentation c);
  Rational label(const BitWord& t) const override;
  RatInterval spread(const BitWord& t) const override;
  std::optional<Tail> tail(const Branch& x, std::size_t k) const override;
  const ApproxPair& pair() const { return pair_; }

 private:
  ApproxPair pair_;
};

/// φ(t) = 1 - 2^-(1+|t|) if ℓ(t) is even, 2^-(1+|t|) if odd.
class SecondReductionLabels final : public LabelMap {
 public:
  Rational label(const BitWord& t) const override;
  RatInterval spread(const BitWord& t) const override;
  std::optional<Tail> tail(const Branch& x, std::size_t k) const override;
};

/// The approximation φ on nat words used by the third reduction:
/// φ(⟨⟩) = ψ(⟨⟩) and φ(u⌢k) = d_{k,u} = ψ(u⌢k) + (-1)^k 2^-(2+|u|), kept inside (0;1).
class ClaimApprox {
 public:
  explicit ClaimApprox(FunctionPresentation c) : psi_(std::move(c)) {}
  Rational phi(const NatWord& u) const;
  Rational d(std::uint64_t k, const NatWord& u) const { return phi(u.append(k)); }
  Rational minus(const NatWord& u) const;
  Rational plus(const NatWord& u) const;
  const CanonicalApprox& psi() const { return psi_; }

 private:
  CanonicalApprox psi_;
};

/// Labels on T ⊕ 2^<ω: s = t⊕v gets φ±(hat(v↾ℓ(t))) by the parity of zt(t);
/// s = (t⊕v)⌢i gets φ(hat((v↾ℓ(t))⌢1)).
class ThirdReductionLabels final : public LabelMap {
 public:
  explicit ThirdReductionLabels(FunctionPresentation c) : phi_(std::move(c)) {}
  Rational label(const BitWord& s) const override;
  RatInterval spread(const BitWord& s) const override;
  std::optional<Tail> tail(const Branch& w, std::size_t k) const override;
  const ClaimApprox& phi() const { return phi_; }

 private:
  ClaimApprox phi_;
};

OffspringPtr first_reduction(const FunctionPresentation& c, const TreePresentation& t, Variant v = Variant::closed);
OffspringPtr second_reduction(const TreePresentation& t, Variant v = Variant::closed);
/// Rejects c unless it is Lipschitz on the full Baire tree and passes the d_{k,u} check to depth 2.
OffspringPtr third_reduction(const FunctionPresentation& c, const TreePresentation& t, Variant v = Variant::closed);

struct SpreadCheck {
  NatWord u;
  Rational spread;    // max - min of d_{k,u} over k <= k_max
  Rational required;  // 2^-(2+|u|)
  bool ok = false;
};

/// The d_{k,u} certificate at every u with entries < fanout and |u| <= depth.
std::vector<SpreadCheck> d_spread_report(const FunctionPresentation& c, std::size_t depth, std::size_t fanout,
                                         std::uint64_t k_max);

struct SiblingCheck {
  NatWord u;
  Rational worst;  // max |φ(u⌢h) - φ(u⌢k)| over h, k < fanout
  Rational bound;  // 2^(1-|u|)
  bool ok = false;
};

std::vector<SiblingCheck> sibling_spread_report(const FunctionPresentation& c, std::size_t depth, std::size_t fanout);

/// An enumeration of a countable set Q: the dyadics in rank order, or a finite list.
class QEnumeration {
 public:
  static QEnumeration dyadics() { return QEnumeration(true, {}); }
  static QEnumeration list(std::vector<Rational> q) { return QEnumeration(false, std::move(q)); }
  /// The first enumerated value in J: the open interval when lo < hi, else the point.
  std::optional<Rational> first_in(const RatInterval& j) const;
  bool is_dyadics() const { return dyadics_; }
  const std::vector<Rational>& values() const { return list_; }

 private:
  QEnumeration(bool d, std::vector<Rational> l) : dyadics_(d), list_(std::move(l)) {}
  bool dyadics_;
  std::vector<Rational> list_;
};

/// Offspring of 2^<ω with φ(ǔ⌢0^n) = the first value of Q in J_u.
OffspringPtr solid_analytic(const FunctionPresentation& c, const QEnumeration& q, Variant v = Variant::closed);

struct InjectiveBuild {
  OraclePtr oracle;
  std::map<NatWord, Rational> labels;  // over the explored heads
  std::vector<Rational> leftovers;
  bool distinct = false;
};

/// Greedy fresh labels from q_list, then the dyadics, over nat words with entries < width and length <= depth;
/// the result is 0⌢K₀ ∪ 1⌢K₁ with K₁ realizing the unused values of q_list.
InjectiveBuild solid_injective(const FunctionPresentation& c, const std::vector<Rational>& q_list,
                               std::size_t depth = 3, std::size_t width = 3);

/// Prunes the largest third-reduction offspring to ↓{u⊕v : (u,v) ∈ section(pt, z↾depth)}.
OffspringPtr uniformity_pipeline(const ProductTreePresentation& pt, const Branch& z, const FunctionPresentation& c,
                                 std::size_t depth);

}  // namespace cantor
