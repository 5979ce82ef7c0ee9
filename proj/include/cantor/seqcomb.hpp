#pragma once

// Finite-sequence combinators over {0,1} and over the naturals.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cantor {

/// An immutable finite word over {0,1}.
class BitWord {
 public:
  BitWord() = default;
  BitWord(std::initializer_list<int> bits);
  explicit BitWord(std::vector<std::uint8_t> bits);

  /// Parses a string of '0'/'1' characters; throws SpecError otherwise.
  static BitWord parse(std::string_view text);
  static BitWord constant(std::size_t length, int bit);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  BitWord prefix(std::size_t n) const;
  BitWord drop(std::size_t n) const;
  BitWord append(int bit) const;
  BitWord concat(const BitWord& tail) const;
  bool is_prefix_of(const BitWord& other) const;
  bool is_constant() const;

  std::string str() const;

  friend auto operator<=>(const BitWord&, const BitWord&) = default;
  friend bool operator==(const BitWord&, const BitWord&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline BitWord operator+(const BitWord& a, const BitWord& b) { return a.concat(b); }

/// An immutable finite word over the naturals.
class NatWord {
 public:
  NatWord() = default;
  NatWord(std::initializer_list<std::uint64_t> entries) : entries_(entries) {}
  explicit NatWord(std::vector<std::uint64_t> entries) : entries_(std::move(entries)) {}

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::uint64_t operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<std::uint64_t>& entries() const { return entries_; }

  NatWord prefix(std::size_t n) const;
  NatWord append(std::uint64_t entry) const;
  bool is_prefix_of(const NatWord& other) const;

  /// Comma-separated entries, "" for the empty word.
  std::string str() const;
  static NatWord parse(std::string_view comma_separated);

  friend auto operator<=>(const NatWord&, const NatWord&) = default;
  friend bool operator==(const NatWord&, const NatWord&) = default;

 private:
  std::vector<std::uint64_t> entries_;
};

struct BitWordHash {
  std::size_t operator()(const BitWord& w) const;
};

enum class Parity { even, odd };

struct HeadTail {
  BitWord head;
  std::size_t zero_tail = 0;
};

struct OnesCount {
  std::size_t ell = 0;
  Parity parity = Parity::even;
};

/// Longest prefix ending in 1 and the length of the trailing 0-block.
HeadTail head_tail(const BitWord& s);

/// 0^(t(0)) 1 0^(t(1)) 1 ... 0^(t(n)) 1; the empty word maps to the empty word.
BitWord encode_check(const NatWord& t);

/// Left inverse of encode_check; ignores the trailing 0-block.
NatWord decode_hat(const BitWord& s);

OnesCount ones_count(const BitWord& s);

/// Even positions from x, odd positions from y. Throws DomainError on length mismatch.
BitWord interleave(const BitWord& x, const BitWord& y);

/// Inserts the block 0^(u(i)) 1 after the i-th 1 of t. Requires ones(t) == |u|.
BitWord ltimes(const BitWord& t, const NatWord& u);

/// s(0) once, s(1) twice, s(2) three times, ...
BitWord stretch(const BitWord& s);

std::uint64_t triangular(std::uint64_t k);

/// Largest k with triangular(k) <= n.
std::uint64_t triangular_root(std::uint64_t n);

/// All words of length n+1 that are neither all-0 nor all-1, in lexicographic order.
std::vector<BitWord> flags(std::size_t n);

/// The prefix of the Baire embedding determined by u (same as encode_check).
BitWord baire_embed_prefix(const NatWord& u);

}  // namespace cantor

template <>
struct std::hash<cantor::BitWord> : cantor::BitWordHash {};
