#include "cantor/exactnum.hpp"

#include <algorithm>
#include <cctype>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Largest n with 2^n dividing z (z > 0).
unsigned long two_adic(const mpz_class& z) { return mpz_scan1(z.get_mpz_t(), 0); }

}  // namespace

Rational ratio(const mpz_class& p, const mpz_class& q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) throw SpecError("malformed rational: \"" + std::string(text) + "\"");
  mpz_class p(std::string(num), 10), q(std::string(den), 10);
  if (q == 0) throw SpecError("zero denominator in rational: \"" + std::string(text) + "\"");
  Rational r(p, q);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational pow2(long e) {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(z);
  Rational r(mpz_class(1), z);
  r.canonicalize();
  return r;
}

bool is_dyadic(const Rational& r) {
  const mpz_class& den = r.get_den();
  return (den & (den - 1)) == 0;
}

Rational Dyadic::value() const {
  Rational r(k);
  r *= pow2(-static_cast<long>(n));
  return r;
}

Dyadic Dyadic::from_rational(const Rational& r) {
  if (!is_dyadic(r)) throw DomainError("not a dyadic rational: " + to_string(r));
  return Dyadic{r.get_num(), two_adic(r.get_den())};
}

std::string Dyadic::str() const { return k.get_str() + "/2^" + std::to_string(n); }

Dyadic Dyadic::parse(std::string_view text) {
  auto caret = text.find("/2^");
  if (caret == std::string_view::npos) return from_rational(parse_rational(text));
  auto exp = text.substr(caret + 3);
  if (!all_digits(exp)) throw SpecError("malformed dyadic: \"" + std::string(text) + "\"");
  Rational r = parse_rational(text.substr(0, caret));
  r *= pow2(-std::stol(std::string(exp)));
  return from_rational(r);
}

RatInterval::RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (hi < lo) throw DomainError("interval with lo > hi: [" + to_string(lo) + ", " + to_string(hi) + "]");
}

RatInterval add(const RatInterval& a, const RatInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

RatInterval add(const RatInterval& a, const Rational& c) { return {a.lo + c, a.hi + c}; }

RatInterval scale(const RatInterval& a, const Rational& c) {
  if (c >= 0) return {a.lo * c, a.hi * c};
  return {a.hi * c, a.lo * c};
}

RatInterval intersect(const RatInterval& a, const RatInterval& b) {
  if (!a.meets(b))
    throw DomainError("disjoint intervals [" + to_string(a.lo) + ", " + to_string(a.hi) + "] and [" +
                      to_string(b.lo) + ", " + to_string(b.hi) + "]");
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

RatInterval hull(const RatInterval& a, const RatInterval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

RatInterval complement(const RatInterval& a) { return {1 - a.hi, 1 - a.lo}; }

RatInterval clamp_unit(const RatInterval& a) {
  Rational lo = std::clamp(a.lo, Rational(0), Rational(1));
  Rational hi = std::clamp(a.hi, Rational(0), Rational(1));
  return {lo, hi};
}

std::vector<int> four_ary_digits(const Rational& r, std::size_t count) {
  if (r <= 0 || r >= 1) throw DomainError("four_ary_digits needs 0 < r < 1, got " + to_string(r));
  std::vector<int> digits;
  digits.reserve(count);
  Rational x = r;
  for (std::size_t i = 0; i < count; ++i) {
    x *= 4;
    mpz_class d = x.get_num() / x.get_den();
    digits.push_back(static_cast<int>(d.get_si()));
    x -= d;
  }
  return digits;
}

mpz_class dyadic_rank(const Dyadic& d) {
  if (d.n == 0 || d.k <= 0 || mpz_even_p(d.k.get_mpz_t()) || d.k >= (mpz_class(1) << d.n))
    throw DomainError("not an element of the open unit dyadics: " + d.str());
  mpz_class level_start = (mpz_class(1) << (d.n - 1)) - 1;
  return level_start + (d.k - 1) / 2;
}

Dyadic dyadic_at_rank(const mpz_class& rank) {
  if (rank < 0) throw DomainError("negative dyadic rank");
  unsigned long n = 1;
  mpz_class start = 0;
  while (true) {
    mpz_class size = mpz_class(1) << (n - 1);
    if (rank < start + size) return Dyadic{2 * (rank - start) + 1, n};
    start += size;
    ++n;
  }
}

Dyadic least_dyadic_in(const Rational& lo, const Rational& hi) {
  Rational l = std::max(lo, Rational(0));
  Rational h = std::min(hi, Rational(1));
  if (l >= h) throw DomainError("no dyadic of (0;1) in (" + to_string(lo) + "; " + to_string(hi) + ")");
  const mpz_class& ln = l.get_num();
  const mpz_class& ld = l.get_den();
  const mpz_class& hn = h.get_num();
  const mpz_class& hd = h.get_den();
  mpz_class k, lhs, rhs;
  for (unsigned long n = 1; n < 4096; ++n) {
    // k = least odd integer with k / 2^n > l
    mpz_mul_2exp(lhs.get_mpz_t(), ln.get_mpz_t(), n);
    mpz_fdiv_q(k.get_mpz_t(), lhs.get_mpz_t(), ld.get_mpz_t());
    k += 1;
    if (mpz_even_p(k.get_mpz_t())) k += 1;
    // k / 2^n < h
    lhs = k * hd;
    mpz_mul_2exp(rhs.get_mpz_t(), hn.get_mpz_t(), n);
    if (lhs < rhs) return Dyadic{k, n};
  }
  throw DomainError("interval too narrow for dyadic search: (" + to_string(lo) + "; " + to_string(hi) + ")");
}

}  // namespace cantor
