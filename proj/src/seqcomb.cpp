#include "cantor/seqcomb.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "cantor/errors.hpp"

namespace cantor {

BitWord::BitWord(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw DomainError("bit word entries must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

BitWord::BitWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_)
    if (b > 1) throw DomainError("bit word entries must be 0 or 1");
}

BitWord BitWord::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw SpecError("bit word must contain only '0' and '1': \"" + std::string(text) + "\"");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BitWord(std::move(bits));
}

BitWord BitWord::constant(std::size_t length, int bit) {
  return BitWord(std::vector<std::uint8_t>(length, static_cast<std::uint8_t>(bit)));
}

BitWord BitWord::prefix(std::size_t n) const {
  n = std::min(n, bits_.size());
  return BitWord(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(n)));
}

BitWord BitWord::drop(std::size_t n) const {
  n = std::min(n, bits_.size());
  return BitWord(std::vector<std::uint8_t>(bits_.begin() + static_cast<std::ptrdiff_t>(n), bits_.end()));
}

BitWord BitWord::append(int bit) const {
  auto bits = bits_;
  bits.push_back(static_cast<std::uint8_t>(bit));
  return BitWord(std::move(bits));
}

BitWord BitWord::concat(const BitWord& tail) const {
  auto bits = bits_;
  bits.insert(bits.end(), tail.bits_.begin(), tail.bits_.end());
  return BitWord(std::move(bits));
}

bool BitWord::is_prefix_of(const BitWord& other) const {
  return bits_.size() <= other.bits_.size() && std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

bool BitWord::is_constant() const {
  return std::adjacent_find(bits_.begin(), bits_.end(), std::not_equal_to<>()) == bits_.end();
}

std::string BitWord::str() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = static_cast<char>('0' + bits_[i]);
  return out;
}

std::size_t BitWordHash::operator()(const BitWord& w) const {
  std::size_t h = 1469598103934665603ull ^ w.size();
  for (auto b : w.bits()) h = (h ^ b) * 1099511628211ull;
  return h;
}

NatWord NatWord::prefix(std::size_t n) const {
  n = std::min(n, entries_.size());
  return NatWord(std::vector<std::uint64_t>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(n)));
}

NatWord NatWord::append(std::uint64_t entry) const {
  auto e = entries_;
  e.push_back(entry);
  return NatWord(std::move(e));
}

bool NatWord::is_prefix_of(const NatWord& other) const {
  return entries_.size() <= other.entries_.size() &&
         std::equal(entries_.begin(), entries_.end(), other.entries_.begin());
}

std::string NatWord::str() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(entries_[i]);
  }
  return out;
}

NatWord NatWord::parse(std::string_view text) {
  std::vector<std::uint64_t> entries;
  if (text.empty()) return NatWord{};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    auto piece = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (ec != std::errc() || ptr != piece.data() + piece.size() || piece.empty())
      throw SpecError("malformed natural-number word: \"" + std::string(text) + "\"");
    entries.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return NatWord(std::move(entries));
}

HeadTail head_tail(const BitWord& s) {
  std::size_t end = s.size();
  while (end > 0 && s[end - 1] == 0) --end;
  return {s.prefix(end), s.size() - end};
}

BitWord encode_check(const NatWord& t) {
  std::vector<std::uint8_t> bits;
  for (auto n : t.entries()) {
    bits.insert(bits.end(), n, 0);
    bits.push_back(1);
  }
  return BitWord(std::move(bits));
}

NatWord decode_hat(const BitWord& s) {
  std::vector<std::uint64_t> entries;
  std::uint64_t zeros = 0;
  for (auto b : s.bits()) {
    if (b == 1) {
      entries.push_back(zeros);
      zeros = 0;
    } else {
      ++zeros;
    }
  }
  return NatWord(std::move(entries));
}

OnesCount ones_count(const BitWord& s) {
  auto ell = static_cast<std::size_t>(std::count(s.bits().begin(), s.bits().end(), 1));
  return {ell, ell % 2 == 0 ? Parity::even : Parity::odd};
}

BitWord interleave(const BitWord& x, const BitWord& y) {
  if (x.size() != y.size())
    throw DomainError("interleave needs words of equal length (" + std::to_string(x.size()) + " vs " +
                      std::to_string(y.size()) + ")");
  std::vector<std::uint8_t> bits;
  bits.reserve(2 * x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    bits.push_back(static_cast<std::uint8_t>(x[i]));
    bits.push_back(static_cast<std::uint8_t>(y[i]));
  }
  return BitWord(std::move(bits));
}

BitWord ltimes(const BitWord& t, const NatWord& u) {
  auto ell = ones_count(t).ell;
  if (ell != u.size())
    throw DomainError("ltimes needs as many entries in u (" + std::to_string(u.size()) + ") as 1s in t (" +
                      std::to_string(ell) + ")");
  std::vector<std::uint8_t> bits;
  std::size_t next = 0;
  for (auto b : t.bits()) {
    bits.push_back(b);
    if (b == 1) {
      bits.insert(bits.end(), u[next++], 0);
      bits.push_back(1);
    }
  }
  return BitWord(std::move(bits));
}

BitWord stretch(const BitWord& s) {
  std::vector<std::uint8_t> bits;
  bits.reserve(triangular(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) bits.insert(bits.end(), i + 1, static_cast<std::uint8_t>(s[i]));
  return BitWord(std::move(bits));
}

std::uint64_t triangular(std::uint64_t k) { return k * (k + 1) / 2; }

std::uint64_t triangular_root(std::uint64_t n) {
  // floor((sqrt(8n+1)-1)/2), corrected for rounding
  auto k = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(n) + 1.0L) - 1.0L) / 2.0L);
  while (triangular(k + 1) <= n) ++k;
  while (k > 0 && triangular(k) > n) --k;
  return k;
}

std::vector<BitWord> flags(std::size_t n) {
  std::vector<BitWord> out;
  if (n >= 63) throw DomainError("flags: order too large to enumerate");
  const std::uint64_t count = std::uint64_t{1} << (n + 1);
  for (std::uint64_t v = 1; v + 1 < count; ++v) {
    std::vector<std::uint8_t> bits(n + 1);
    for (std::size_t i = 0; i <= n; ++i) bits[i] = static_cast<std::uint8_t>((v >> (n - i)) & 1u);
    out.emplace_back(std::move(bits));
  }
  return out;
}

BitWord baire_embed_prefix(const NatWord& u) { return encode_check(u); }

}  // namespace cantor
