#pragma once

// Clopen subsets of Cantor space as normalized antichains of cylinders.

#include <vector>

#include "cantor/exactnum.hpp"
#include "cantor/seqcomb.hpp"

namespace cantor {

class ClopenSet {
 public:
  ClopenSet() = default;

  /// Normalizes an arbitrary finite list of words: drops covered words and merges siblings.
  static ClopenSet from_words(std::vector<BitWord> words);
  static ClopenSet full() { return from_words({BitWord{}}); }
  static ClopenSet empty() { return {}; }

  /// Sorted lexicographically; prefix free; no sibling pair.
  const std::vector<BitWord>& words() const { return words_; }

  bool is_empty() const { return words_.empty(); }
  bool is_full() const { return words_.size() == 1 && words_[0].empty(); }
  Rational measure() const;
  std::size_t depth() const;
  /// Whether the cylinder N_s lies inside the set.
  bool covers(const BitWord& s) const;

  friend bool operator==(const ClopenSet&, const ClopenSet&) = default;

 private:
  std::vector<BitWord> words_;
};

ClopenSet set_union(const ClopenSet& a, const ClopenSet& b);
ClopenSet set_intersection(const ClopenSet& a, const ClopenSet& b);
ClopenSet set_complement(const ClopenSet& a);
ClopenSet set_difference(const ClopenSet& a, const ClopenSet& b);
/// s ⌢ A
ClopenSet concat(const BitWord& s, const ClopenSet& a);
/// A | s, the set of x with s ⌢ x in A.
ClopenSet localize(const ClopenSet& a, const BitWord& s);
bool is_subset(const ClopenSet& a, const ClopenSet& b);

/// The union of the lexicographically first k cylinders of length n, for d = k/2^n in [0;1].
ClopenSet canonical_of_measure(const Rational& d);

/// A clopen V inside U with measure exactly d, taking cylinders of U in lexicographic order.
/// Requires d dyadic and 0 < d < μ(U).
ClopenSet subset_of_measure(const ClopenSet& u, const Rational& d);

}  // namespace cantor
