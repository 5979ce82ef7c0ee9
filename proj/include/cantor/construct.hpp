#pragma once

// Dyadic approximations of continuous functions, dualistic sets of any measure,
// solid sets with countable range, and tree offspring.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cantor/clopen.hpp"
#include "cantor/exactnum.hpp"
#include "cantor/oracle.hpp"
#include "cantor/seqcomb.hpp"
#include "cantor/treekit.hpp"

namespace cantor {

/// A continuous c: [U] -> [0;1] given by the closures of c[N_u].
class FunctionPresentation {
 public:
  using NatIntervals = std::function<RatInterval(const NatWord&)>;
  using CantorIntervals = std::function<RatInterval(const BitWord&)>;
  using Membership = std::function<bool(const NatWord&)>;

  /// An empty `member` means the full Baire tree. An empty `cantor` means no view on 2^<ω.
  FunctionPresentation(std::string name, nlohmann::json params, NatIntervals nat, CantorIntervals cantor,
                       bool lipschitz, std::string image_doc, Membership member = {});

  static FunctionPresentation constant(const Rational& v);
  /// a + (b - a) Σ (x_i mod 2) 2^-(i+1).
  static FunctionPresentation interval(const Rational& a, const Rational& b);
  /// eps + (1 - 2 eps) Σ h(x)_i 2^-(i+1), injective on Baire space.
  static FunctionPresentation injective(const Rational& eps);
  /// The three presets shipped with the library.
  static std::vector<FunctionPresentation> shipped();

  /// {"preset":"constant","value":..} | {"preset":"interval","a":..,"b":..} | {"preset":"injective","eps":..}
  static FunctionPresentation from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  const std::string& name() const { return name_; }
  bool lipschitz() const { return lipschitz_; }
  const std::string& image_doc() const { return image_doc_; }
  bool on_full_baire_tree() const { return !member_; }
  bool member(const NatWord& u) const { return !member_ || member_(u); }

  /// Closure of c[N_u].
  RatInterval interval_at(const NatWord& u) const;
  bool has_cantor_view() const { return static_cast<bool>(cantor_); }
  /// Closure of c(h^-1[N_t ∩ N]) for a binary node t.
  RatInterval cantor_interval_at(const BitWord& t) const;
  /// c at head ⌢ period^ω, to within the diameter at `depth`.
  RatInterval value_near(const NatWord& head, const NatWord& period, std::size_t depth) const;
  /// For reparametrized presentations, the original node behind u.
  std::optional<NatWord> origin(const NatWord& u) const;
  void set_origin(std::shared_ptr<const std::map<NatWord, NatWord>> origin) { origin_ = std::move(origin); }

 private:
  std::string name_;
  nlohmann::json params_;
  NatIntervals nat_;
  CantorIntervals cantor_;
  bool lipschitz_;
  std::string image_doc_;
  Membership member_;
  std::shared_ptr<const std::map<NatWord, NatWord>> origin_;
};

/// The open interval I_t: (i;s) when i < s, else the point widened by 2^-(len+1).
RatInterval approximation_interval(const RatInterval& closure, std::size_t len);
/// The ◁-least dyadic of I_t.
Rational canonical_label(const RatInterval& closure, std::size_t len);
/// base + shift, or the midpoint towards 0 or 1 when that leaves (0;1).
Rational shift_inside(const Rational& base, const Rational& shift);

class CanonicalApprox {
 public:
  explicit CanonicalApprox(FunctionPresentation c) : c_(std::move(c)) {}
  Rational at(const NatWord& u) const;
  /// On the Cantor view.
  Rational at(const BitWord& t) const;
  RatInterval interval(const NatWord& u) const;
  RatInterval interval(const BitWord& t) const;
  const FunctionPresentation& function() const { return c_; }

 private:
  FunctionPresentation c_;
};

CanonicalApprox canonical_approx(const FunctionPresentation& c);

/// φ∓ = φ ∓ 2^-(|t|+2), kept inside (0;1).
class ApproxPair {
 public:
  explicit ApproxPair(CanonicalApprox phi) : phi_(std::move(phi)) {}
  Rational minus(const NatWord& u) const;
  Rational plus(const NatWord& u) const;
  Rational minus(const BitWord& t) const;
  Rational plus(const BitWord& t) const;
  const CanonicalApprox& phi() const { return phi_; }

 private:
  CanonicalApprox phi_;
};

ApproxPair approx_pair(const FunctionPresentation& c);

/// Reindexes c along A_0 = {⟨⟩}, A_{n+1} = minimal nodes below A_n with diameter <= 2^-(n+1).
/// Levels 0..depth are materialized, exploring children < fanout.
FunctionPresentation lipschitz_reparam(const FunctionPresentation& c, std::size_t depth, std::size_t fanout = 3);

// Dualistic sets.

/// U₂ = {1} ∪ {0^n 1^m 0 : n > m > 0}, restricted to words of length <= max_len.
ClopenSet u2_truncated(std::size_t max_len);

/// V ∪ W_f, with V ⊆ U₂ clopen and W_f = ⋃_{n>=1} 0^n 1^n ⌢ D_f(n).
class DualisticOracle final : public SetOracle {
 public:
  static std::shared_ptr<const DualisticOracle> w_f(const Rational& r);
  static std::shared_ptr<const DualisticOracle> of_measure(const Rational& r);

  RatInterval local_bounds(const BitWord& s, unsigned budget) const override;
  Rational slack(const BitWord&, unsigned) const override { return 0; }
  std::optional<int> constant_below(const BitWord& s) const override;
  std::optional<RatInterval> certify(const Branch& z, std::size_t n) const override;
  std::vector<Designated> designated() const override;
  std::string kind() const override { return "dualistic"; }

  const Rational& measure() const { return r_; }
  /// The dyadic measure of V, 0 when r <= 1/3.
  const Rational& d() const { return d_; }
  const ClopenSet& clopen_part() const { return v_; }
  const Rational& w_measure() const { return w_; }
  /// f(n) for n >= 1.
  Rational f(std::size_t n) const;
  /// Σ_{n>=N} 4^-n f(n) for N >= 1.
  Rational tail_sum(std::size_t n) const;
  Rational exact(const BitWord& s) const;
  nlohmann::json to_json() const;

 private:
  DualisticOracle(Rational r, Rational d, ClopenSet v, Rational w);
  Rational w_local(const BitWord& s) const;

  Rational r_, d_;
  ClopenSet v_;
  Rational w_;
  std::size_t h_ = 0;  // 0 when w_ = 1/3
  std::vector<ClopenSet> pieces_;  // D_0, D_1/4, D_1/2, D_3/4, D_1
};

OraclePtr dualistic_w_f(const Rational& r);
OraclePtr dualistic_of_measure(const Rational& r);

/// ⋃_{n=1..N} 0^n 1^n ⌢ (⋃_m 0^m 1 D(r_n)); a clopen set when S is empty.
OraclePtr solid_countable_range(const std::vector<Rational>& s);

// Offspring.

class LabelMap {
 public:
  struct Tail {
    RatInterval hull;                  // contains ψ(x↾j) for all j >= k
    std::optional<Rational> osc_lower; // limsup - liminf of ψ(x↾j) is at least this
  };

  virtual ~LabelMap() = default;
  virtual Rational label(const BitWord& t) const = 0;
  /// Contains every label at t and below.
  virtual RatInterval spread(const BitWord& t) const = 0;
  /// Every label at t and below equals label(t).
  virtual bool constant_below(const BitWord&) const { return false; }
  virtual std::optional<Tail> tail(const Branch& x, std::size_t k) const;
  virtual nlohmann::json to_json() const { return nullptr; }
};

using LabelPtr = std::shared_ptr<const LabelMap>;

/// Each node takes the label of its longest labelled prefix, or the default.
class ExplicitLabels final : public LabelMap {
 public:
  ExplicitLabels(std::map<BitWord, Rational> labels, Rational default_label);
  Rational label(const BitWord& t) const override;
  RatInterval spread(const BitWord& t) const override;
  bool constant_below(const BitWord& t) const override;
  std::optional<Tail> tail(const Branch& x, std::size_t k) const override;
  nlohmann::json to_json() const override;
  /// {"labels": {...}, "default_label": ...}
  static std::shared_ptr<const ExplicitLabels> from_json(const nlohmann::json& j);

 private:
  std::map<BitWord, Rational> labels_;
  Rational default_;
};

/// A label map given by a function, with a coarse spread.
class FunctionLabels final : public LabelMap {
 public:
  using Fn = std::function<Rational(const BitWord&)>;
  using Spread = std::function<RatInterval(const BitWord&)>;
  FunctionLabels(Fn fn, Spread spread) : fn_(std::move(fn)), spread_(std::move(spread)) {}
  Rational label(const BitWord& t) const override { return fn_(t); }
  RatInterval spread(const BitWord& t) const override { return spread_(t); }

 private:
  Fn fn_;
  Spread spread_;
};

enum class Variant { closed, open };
std::string variant_name(Variant v);
Variant parse_variant(const std::string& s);

/// K_T (or O_T): the stretched body of T plus D_t behind every flag at t̄.
class OffspringOracle final : public SetOracle {
 public:
  OffspringOracle(TreePresentation tree, LabelPtr labels, Variant variant,
                  std::optional<TreePresentation> prune = std::nullopt, std::vector<Designated> designated = {});

  RatInterval local_bounds(const BitWord& s, unsigned budget) const override;
  Rational slack(const BitWord& s, unsigned budget) const override;
  std::optional<int> constant_below(const BitWord& s) const override;
  std::optional<RatInterval> certify(const Branch& z, std::size_t n) const override;
  std::optional<Rational> oscillation_lower(const Branch& z) const override;
  std::vector<Designated> designated() const override { return designated_; }
  std::string kind() const override { return "offspring"; }

  /// μ(A | stretch(t)) for a node t of order |t|.
  RatInterval node_bounds(const BitWord& t, unsigned budget) const;
  bool member(const BitWord& t) const;
  /// The compliant set behind the flags at t.
  OraclePtr compliant(const BitWord& t) const;

  const TreePresentation& tree() const { return tree_; }
  const std::optional<TreePresentation>& prune_tree() const { return prune_; }
  const LabelPtr& labels() const { return labels_; }
  Variant variant() const { return variant_; }
  nlohmann::json to_json() const;

 private:
  Rational checked_label(const BitWord& t) const;
  std::optional<bool> branch_in_tree(const Branch& x) const;

  TreePresentation tree_;
  LabelPtr labels_;
  Variant variant_;
  std::optional<TreePresentation> prune_;
  std::vector<Designated> designated_;

  mutable std::mutex mu_;
  mutable std::map<std::pair<BitWord, unsigned>, RatInterval> memo_;
  mutable std::map<Rational, OraclePtr> compliant_;
};

using OffspringPtr = std::shared_ptr<const OffspringOracle>;

OffspringPtr offspring_build(const TreePresentation& t, LabelPtr labels, Variant variant = Variant::closed,
                             std::vector<Designated> designated = {});
/// A minus N_t̄ for t ∉ U. Subtree-ness is checked on words of length <= 10.
OffspringPtr offspring_prune(const OffspringOracle& a, const TreePresentation& u);

}  // namespace cantor
