#pragma once

// Eventually periodic infinite binary sequences: head ⌢ period^ω.

#include <cstdint>
#include <string>

#include "cantor/seqcomb.hpp"

namespace cantor {

class Lasso {
 public:
  Lasso() : period_({0}) {}
  /// Throws DomainError if the period is empty. The result is normalized.
  Lasso(BitWord head, BitWord period);

  static Lasso zeros() { return Lasso(BitWord{}, BitWord{0}); }
  static Lasso ones() { return Lasso(BitWord{}, BitWord{1}); }

  const BitWord& head() const { return head_; }
  const BitWord& period() const { return period_; }

  int bit_at(std::uint64_t n) const;
  BitWord prefix(std::size_t n) const;
  Lasso drop(std::size_t n) const;
  Lasso prepend(const BitWord& w) const { return Lasso(w + head_, period_); }

  /// Infinitely many 1s.
  bool in_N() const;
  /// Number of leading bits after which the sequence is constant 0 (only meaningful when !in_N()).
  std::size_t head_length_before_zeros() const;

  std::string str() const { return head_.str() + "(" + period_.str() + ")"; }

  friend bool operator==(const Lasso& a, const Lasso& b) { return a.head_ == b.head_ && a.period_ == b.period_; }

 private:
  BitWord head_;
  BitWord period_;
};

/// x ⊕ y.
Lasso interleave(const Lasso& x, const Lasso& y);
/// Even and odd positions.
std::pair<Lasso, Lasso> deinterleave(const Lasso& z);

}  // namespace cantor
