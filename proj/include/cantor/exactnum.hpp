#pragma once

// Exact rationals, dyadics, closed rational intervals and the order on dyadics.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cantor {

using Rational = mpq_class;

/// p/q in lowest terms; q must be nonzero.
Rational ratio(const mpz_class& p, const mpz_class& q);

/// Accepts "p/q", "p" or "-p/q". Throws SpecError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Reduced form; integers print without a denominator ("0", "1").
std::string to_string(const Rational& r);

/// 2^e for any integer e.
Rational pow2(long e);

bool is_dyadic(const Rational& r);

/// k / 2^n in lowest terms.
struct Dyadic {
  mpz_class k;
  unsigned long n = 0;

  Rational value() const;
  /// Throws DomainError if the denominator of r is not a power of two.
  static Dyadic from_rational(const Rational& r);
  /// "k/2^n"
  std::string str() const;
  /// Parses "k/2^n" or any rational with a power-of-two denominator.
  static Dyadic parse(std::string_view text);
};

/// Closed interval [lo, hi].
struct RatInterval {
  Rational lo;
  Rational hi;

  RatInterval() = default;
  RatInterval(Rational l, Rational h);
  static RatInterval point(const Rational& r) { return RatInterval(r, r); }

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& r) const { return lo <= r && r <= hi; }
  bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool meets(const RatInterval& o) const { return lo <= o.hi && o.lo <= hi; }

  friend bool operator==(const RatInterval& a, const RatInterval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

RatInterval add(const RatInterval& a, const RatInterval& b);
RatInterval add(const RatInterval& a, const Rational& c);
/// Multiplies by a constant of either sign.
RatInterval scale(const RatInterval& a, const Rational& c);
/// Throws DomainError when the intervals are disjoint.
RatInterval intersect(const RatInterval& a, const RatInterval& b);
RatInterval hull(const RatInterval& a, const RatInterval& b);
/// [1 - hi, 1 - lo]
RatInterval complement(const RatInterval& a);
RatInterval clamp_unit(const RatInterval& a);

/// First `count` digits of the terminating-preferred 4-ary expansion of r in (0;1).
std::vector<int> four_ary_digits(const Rational& r, std::size_t count);

/// Position of d in the order: exponent ascending, then numerator ascending.
mpz_class dyadic_rank(const Dyadic& d);

/// The element of a given rank (inverse of dyadic_rank).
Dyadic dyadic_at_rank(const mpz_class& rank);

/// The least dyadic of (0;1) in the open interval (lo;hi) under the rank order.
Dyadic least_dyadic_in(const Rational& lo, const Rational& hi);

}  // namespace cantor
