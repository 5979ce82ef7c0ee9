#pragma once

// Slow reference computations used to cross-check the library. Nothing here calls
// the library's own algorithms for the quantity being checked.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cantor/exactnum.hpp"
#include "cantor/seqcomb.hpp"
#include "cantor/treekit.hpp"

namespace cantor::ref {

// Codecs.
BitWord encode_check(const NatWord& u);
NatWord decode_hat(const BitWord& s);
BitWord head(const BitWord& s);
std::size_t zero_tail(const BitWord& s);
std::size_t ones(const BitWord& s);

/// Long division of num/den in base 4, num < den.
struct QuaternaryExpansion {
  std::vector<int> digits;             // digits[0] is u_1
  std::vector<mpz_class> remainders;   // remainders[n] after n digits
  mpz_class den;
};
QuaternaryExpansion quaternary(const Rational& r, std::size_t count);

/// μ(U₁) as the geometric series Σ_{n>=1} 4^-n.
Rational u1_measure();
/// The measure of the cylinders of A₂ longer than len, in closed form.
Rational u2_tail(std::size_t len);
/// Whether w lies inside a cylinder of A₂ = {1} ∪ {0^n 1^m 0 : n > m > 0}.
bool inside_u2(const BitWord& w);

/// Σ 2^-|w| after checking that the words form an antichain.
Rational antichain_measure(const std::vector<BitWord>& words);
/// μ(A|s) for the union of cylinders, by counting extensions at the given depth.
Rational cylinder_count_measure(const std::vector<BitWord>& words, const BitWord& s, std::size_t depth);
/// μ(D|w) for D the first k cylinders of length n in lexicographic order, d = k/2^n.
Rational canonical_local(const Rational& d, const BitWord& w);

/// The series Σ_{n>=1} 4^-n f(n) for the f that realizes w <= 1/3, and the f values themselves.
struct SeriesReference {
  Rational sum;
  std::vector<Rational> f;  // f[n-1] for n = 1..count
};
SeriesReference w_f_series(const Rational& w, std::size_t count);

/// A binary tree given by its nodes; leaves continue with every extension.
struct BruteTree {
  std::set<BitWord> nodes;
  bool member(const BitWord& t) const;
  std::size_t depth() const;
};

/// Longest labelled prefix wins.
Rational inherited_label(const std::map<BitWord, Rational>& labels, const Rational& fallback, const BitWord& t);

/// μ(K|s) for the offspring of a BruteTree with dyadic labels, by enumerating words of length `depth`.
/// Labels must be constant below depth `label_depth` and `depth` must reach past the explicit tree.
Rational brute_offspring(const BruteTree& t, const std::map<BitWord, Rational>& labels, const Rational& fallback,
                         const BitWord& s, std::size_t depth);

/// J at a binary node for the shipped presets, from their defining formulas.
RatInterval preset_cantor_interval(const std::string& preset, const std::vector<Rational>& params, const BitWord& t);
/// c(0,0,0,...) for the shipped presets.
Rational preset_at_zero(const std::string& preset, const std::vector<Rational>& params);

/// Cardinality of [T] ∩ N by path search over lassos with head <= max_head and period <= max_period,
/// checked to `depth`; a count above the number of leaves reads as continuum.
Cardinality census_brute(const TreePresentation& t, std::size_t max_head, std::size_t max_period, std::size_t depth);

}  // namespace cantor::ref
