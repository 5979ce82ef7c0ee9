#pragma once

// Infinite branches, set oracles with certified local-measure bounds, density traces and point classification.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cantor/clopen.hpp"
#include "cantor/exactnum.hpp"
#include "cantor/lasso.hpp"
#include "cantor/seqcomb.hpp"

namespace cantor {

class Branch {
 public:
  enum class Kind { periodic, stretch, interleave, baire, shift, prefixed };

  Branch() : Branch(Lasso::zeros()) {}
  Branch(const Lasso& z);  // NOLINT: implicit on purpose
  static Branch stretch(const Branch& of);
  static Branch interleave(const Branch& x, const Branch& y);
  /// h(u⌢p^ω) for nat words u and nonempty p.
  static Branch baire(const NatWord& head, const NatWord& period);

  Kind kind() const;
  int bit_at(std::uint64_t n) const;
  BitWord prefix(std::size_t n) const;
  Branch drop(std::size_t n) const;
  Branch prepend(const BitWord& w) const;

  /// Infinitely many 1s.
  bool in_N() const;
  std::optional<Lasso> as_lasso() const;
  /// x with stretch(x) = this, when the presentation shows it.
  std::optional<Branch> unstretch() const;
  std::optional<std::pair<Branch, Branch>> deinterleave() const;
  /// The element of Baire space coded by this branch, for baire branches.
  std::optional<std::pair<NatWord, NatWord>> baire_code() const;

  nlohmann::json to_json() const;
  static Branch from_json(const nlohmann::json& j);
  std::string str() const;

 private:
  struct Node;
  explicit Branch(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// A point whose density is known from the construction.
struct Designated {
  Branch z;
  RatInterval density;
  std::string note;
};

/// A measurable set up to null difference, seen through bounds on μ(A|s).
class SetOracle {
 public:
  virtual ~SetOracle() = default;

  /// Contains μ(A|s); nested in the budget; width at most slack(s, budget).
  virtual RatInterval local_bounds(const BitWord& s, unsigned budget) const = 0;
  virtual Rational slack(const BitWord& s, unsigned budget) const = 0;
  /// 0 or 1 when A|s is null or conull.
  virtual std::optional<int> constant_below(const BitWord&) const { return std::nullopt; }
  /// An interval containing μ(A|z↾m) for every m >= n, when the construction provides one.
  virtual std::optional<RatInterval> certify(const Branch&, std::size_t) const { return std::nullopt; }
  /// A lower bound on the oscillation at z, when the construction provides one.
  virtual std::optional<Rational> oscillation_lower(const Branch&) const { return std::nullopt; }
  virtual std::vector<Designated> designated() const { return {}; }
  virtual std::string kind() const = 0;
};

using OraclePtr = std::shared_ptr<const SetOracle>;

class ClopenOracle final : public SetOracle {
 public:
  explicit ClopenOracle(ClopenSet a) : a_(std::move(a)) {}
  RatInterval local_bounds(const BitWord& s, unsigned budget) const override;
  Rational slack(const BitWord&, unsigned) const override { return 0; }
  std::optional<int> constant_below(const BitWord& s) const override;
  std::optional<RatInterval> certify(const Branch& z, std::size_t n) const override;
  std::string kind() const override { return "clopen"; }
  const ClopenSet& set() const { return a_; }

 private:
  ClopenSet a_;
};

OraclePtr from_clopen(const ClopenSet& a);

struct Part {
  BitWord prefix;
  OraclePtr oracle;
};

/// ⋃ prefix_i ⌢ A_i over pairwise incomparable prefixes, optionally complemented.
class ComposeOracle final : public SetOracle {
 public:
  ComposeOracle(std::vector<Part> parts, bool complemented, std::vector<Designated> designated = {});
  RatInterval local_bounds(const BitWord& s, unsigned budget) const override;
  Rational slack(const BitWord& s, unsigned budget) const override;
  std::optional<int> constant_below(const BitWord& s) const override;
  std::optional<RatInterval> certify(const Branch& z, std::size_t n) const override;
  std::optional<Rational> oscillation_lower(const Branch& z) const override;
  std::vector<Designated> designated() const override;
  std::string kind() const override { return complemented_ ? "complement" : "compose"; }
  const std::vector<Part>& parts() const { return parts_; }

 private:
  // The part whose prefix is a prefix of s.
  const Part* owner(const BitWord& s) const;
  RatInterval raw_bounds(const BitWord& s, unsigned budget) const;

  std::vector<Part> parts_;
  bool complemented_;
  std::vector<Designated> extra_;
};

OraclePtr compose(std::vector<Part> parts, bool complemented = false);
OraclePtr complement_of(const OraclePtr& a);

/// ⋃_m 0^m ⌢ 1 ⌢ D; the density at 0^ω is μ(D).
class SpineRepeatOracle final : public SetOracle {
 public:
  explicit SpineRepeatOracle(OraclePtr part) : part_(std::move(part)) {}
  RatInterval local_bounds(const BitWord& s, unsigned budget) const override;
  Rational slack(const BitWord& s, unsigned budget) const override;
  std::optional<int> constant_below(const BitWord& s) const override;
  std::optional<RatInterval> certify(const Branch& z, std::size_t n) const override;
  std::optional<Rational> oscillation_lower(const Branch& z) const override;
  std::string kind() const override { return "spine-repeat"; }

 private:
  OraclePtr part_;
};

struct TracePoint {
  std::size_t n = 0;
  RatInterval bounds;
};

/// μ(A|z↾n) for n < steps.
std::vector<TracePoint> trace(const SetOracle& a, const Branch& z, std::size_t steps, unsigned budget);

struct PointClassification {
  enum class Verdict { converges, blurry, undetermined };
  Verdict verdict = Verdict::undetermined;
  RatInterval value;                  // converges: the certified limit interval; otherwise the last bounds
  std::size_t certified_depth = 0;    // converges: the bound holds from this depth on
  Rational osc_lower = 0;             // blurry
  std::vector<TracePoint> high, low;  // blurry witnesses

  std::string verdict_name() const;
  nlohmann::json to_json() const;
};

inline constexpr unsigned kDefaultBudget = 5;

PointClassification classify(const SetOracle& a, const Branch& z, const Rational& eps, std::size_t max_depth,
                             unsigned budget = kDefaultBudget);

nlohmann::json interval_json(const RatInterval& r);

}  // namespace cantor
