#pragma once

// Finitely presented pruned trees and the tree combinators built on them.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cantor/exactnum.hpp"
#include "cantor/lasso.hpp"
#include "cantor/seqcomb.hpp"

namespace cantor {

/// How a leaf of an explicit presentation continues.
struct Policy {
  enum class Kind { zeros, full, periodic };
  Kind kind = Kind::zeros;
  BitWord period;

  static Policy zeros() { return {Kind::zeros, {}}; }
  static Policy full() { return {Kind::full, {}}; }
  static Policy periodic(BitWord w);

  /// Whether e is a legal continuation after the leaf.
  bool allows(const BitWord& e) const;
  /// The policy seen after `consumed` further bits.
  Policy after(std::size_t consumed) const;
  nlohmann::json to_json() const;
  static Policy from_json(const nlohmann::json& j);

  friend bool operator==(const Policy&, const Policy&) = default;
};

enum class CardKind { finite, countable, continuum };

struct Cardinality {
  CardKind kind = CardKind::finite;
  std::uint64_t count = 0;

  static Cardinality finite(std::uint64_t n) { return {CardKind::finite, n}; }
  static Cardinality continuum() { return {CardKind::continuum, 0}; }
  std::string str() const;
  friend Cardinality operator+(const Cardinality& a, const Cardinality& b);
  friend bool operator==(const Cardinality&, const Cardinality&) = default;
};

class TreeImpl;

class TreePresentation {
 public:
  /// Validates downward closure, the presence of the root, and one policy per leaf.
  static TreePresentation explicit_tree(std::set<BitWord> nodes, std::map<BitWord, Policy> policies);
  static TreePresentation full();
  static TreePresentation zeros();
  /// The single branch z.
  static TreePresentation branch(const Lasso& z);

  static TreePresentation from_json(const nlohmann::json& j);
  /// Only explicit presentations serialize.
  nlohmann::json to_json() const;

  bool member(const BitWord& s) const;
  /// Every extension of s is a member.
  bool full_below(const BitWord& s) const;
  /// Some branch through the member s, if the presentation can name one.
  std::optional<Lasso> continuation(const BitWord& s) const;
  /// Whether z is a branch; empty when undecidable for this presentation.
  std::optional<bool> contains_branch(const Lasso& z) const;

  bool is_explicit() const;
  const std::set<BitWord>& explicit_nodes() const;
  const std::map<BitWord, Policy>& leaf_policies() const;
  std::size_t explicit_depth() const;

  /// Cardinality of [T] ∩ N. Explicit presentations only.
  Cardinality census_N() const;

  explicit TreePresentation(std::shared_ptr<const TreeImpl> impl) : impl_(std::move(impl)) {}
  const TreeImpl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const TreeImpl> impl_;
};

class TreeImpl {
 public:
  virtual ~TreeImpl() = default;
  virtual bool member(const BitWord& s) const = 0;
  virtual bool full_below(const BitWord& s) const = 0;
  virtual std::optional<Lasso> continuation(const BitWord& s) const = 0;
  virtual std::optional<bool> contains_branch(const Lasso&) const { return std::nullopt; }
};

/// E₂(T) as a lazy presentation: s is a member iff the T-part of s is in T.
TreePresentation exploded(const TreePresentation& t);
/// Explicit presentation of E₂(T), exact on words of length <= depth.
TreePresentation explode(const TreePresentation& t, std::size_t depth);
/// T ⊕ V, exact at every depth.
TreePresentation tree_interleave(const TreePresentation& t, const TreePresentation& v);
/// 0⌢left ∪ 1⌢right.
TreePresentation graft(const TreePresentation& left, const TreePresentation& right);
/// Explicit presentation agreeing with t on words of length <= depth.
TreePresentation materialize(const TreePresentation& t, std::size_t depth);
/// |Lev(T,n)| / 2^n.
Rational level_stat(const TreePresentation& t, std::size_t n);

/// The T-part of s under the decoding used by E₂ (bits read outside inserted blocks).
BitWord exploded_t_part(const BitWord& s);

// Trees on the naturals.

struct NatPolicy {
  enum class Kind { terminal, zeros, periodic, full, fan };
  Kind kind = Kind::terminal;
  NatWord period;
  nlohmann::json to_json() const;
  static NatPolicy from_json(const nlohmann::json& j);
};

class NatTreePresentation {
 public:
  NatTreePresentation(std::set<NatWord> nodes, std::map<NatWord, NatPolicy> policies);
  static NatTreePresentation from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  const std::set<NatWord>& nodes() const { return nodes_; }
  const std::map<NatWord, NatPolicy>& policies() const { return policies_; }
  bool is_leaf(const NatWord& u) const;
  /// Cardinality of the body [U].
  Cardinality body_census() const;

 private:
  std::set<NatWord> nodes_;
  std::map<NatWord, NatPolicy> policies_;
};

/// U* = ↓{ǔ : u ∈ U} ∪ {ǔ⌢0^n : u terminal}; fan leaves are materialized to `depth`.
TreePresentation star(const NatTreePresentation& u, std::size_t depth);

// Trees on tuples of bits.

struct ComponentPolicy {
  Policy policy;
  int copy_of = -1;  // when >= 0 the extension equals that of the named component

  static ComponentPolicy copy(int j) { return {Policy::zeros(), j}; }
  nlohmann::json to_json() const;
  static ComponentPolicy from_json(const nlohmann::json& j);
};

using Tuple = std::vector<BitWord>;

class ProductTreePresentation {
 public:
  ProductTreePresentation(std::size_t arity, std::set<Tuple> nodes, std::map<Tuple, std::vector<ComponentPolicy>> policies);
  static ProductTreePresentation full(std::size_t arity);
  static ProductTreePresentation from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  std::size_t arity() const { return arity_; }
  const std::set<Tuple>& nodes() const { return nodes_; }
  const std::map<Tuple, std::vector<ComponentPolicy>>& policies() const { return policies_; }
  std::size_t explicit_depth() const;

  bool member(const Tuple& t) const;
  bool full_below(const Tuple& t) const;
  std::optional<bool> contains_branch(const std::vector<Lasso>& z) const;
  /// A branch through the member t, one sequence per component.
  std::vector<Lasso> continuation(const Tuple& t) const;

 private:
  std::vector<Lasso> leaf_tails(const Tuple& leaf, std::size_t consumed) const;
  std::optional<Tuple> covering_leaf(const Tuple& t) const;

  std::size_t arity_;
  std::set<Tuple> nodes_;
  std::map<Tuple, std::vector<ComponentPolicy>> policies_;
  std::set<Tuple> full_subtrees_;
};

/// T(z) = {t : (t, z↾|t|) ∈ T} on the last coordinate, exact to max(depth, explicit depth).
/// Only z↾depth is read; beyond it, a copy of z is continued with zeros.
ProductTreePresentation section(const ProductTreePresentation& pt, const BitWord& z_prefix, std::size_t depth);
/// Arity-2 input yields a binary tree.
TreePresentation section_tree(const ProductTreePresentation& pt, const BitWord& z_prefix, std::size_t depth);
/// ↓{u ⊕ v : (u, v) ∈ P} for an arity-2 product tree P.
TreePresentation pair_interleave(const ProductTreePresentation& p);

}  // namespace cantor
