#include <doctest.h>

#include "cantor/seqcomb.hpp"

using namespace cantor;

namespace {
BitWord bw(const char* s) { return BitWord::parse(s); }
NatWord nw(const char* s) { return NatWord::parse(s); }
}  // namespace

TEST_CASE("head and zero tail") {
  auto a = head_tail(bw("01100"));
  CHECK(a.head == bw("011"));
  CHECK(a.zero_tail == 2);
  auto b = head_tail(bw("00"));
  CHECK(b.head.empty());
  CHECK(b.zero_tail == 2);
  auto c = head_tail(bw("1"));
  CHECK(c.head == bw("1"));
  CHECK(c.zero_tail == 0);
}

TEST_CASE("check and hat codecs") {
  CHECK(encode_check(nw("2,0,1")) == bw("001101"));
  CHECK(encode_check(NatWord{}).empty());
  CHECK(encode_check(nw("0")) == bw("1"));
  CHECK(decode_hat(bw("001101")) == nw("2,0,1"));
  CHECK(decode_hat(bw("0011010")) == nw("2,0,1"));
  CHECK(decode_hat(bw("00")).empty());
}

TEST_CASE("ones count") {
  auto a = ones_count(bw("001101"));
  CHECK(a.ell == 3);
  CHECK(a.parity == Parity::odd);
  CHECK(ones_count(bw("000")).ell == 0);
  CHECK(ones_count(bw("000")).parity == Parity::even);
  CHECK(ones_count(bw("11")).parity == Parity::even);
}

TEST_CASE("interleave, ltimes, stretch") {
  CHECK(interleave(bw("10"), bw("01")) == bw("1001"));
  CHECK(interleave(BitWord{}, BitWord{}).empty());
  CHECK(interleave(bw("1"), bw("1")) == bw("11"));

  CHECK(ltimes(bw("0100"), nw("3")) == bw("01000100"));
  CHECK(ltimes(bw("00"), NatWord{}) == bw("00"));
  CHECK(ltimes(bw("11"), nw("0,0")) == bw("1111"));

  CHECK(stretch(bw("101")) == bw("100111"));
  CHECK(stretch(BitWord{}).empty());
  CHECK(stretch(bw("0")) == bw("0"));
  CHECK(triangular(3) == 6);
  CHECK(triangular(0) == 0);
  CHECK(triangular(4) == 10);
}

TEST_CASE("flags") {
  CHECK(flags(0).empty());
  auto f1 = flags(1);
  REQUIRE(f1.size() == 2);
  CHECK(std::find(f1.begin(), f1.end(), bw("01")) != f1.end());
  CHECK(std::find(f1.begin(), f1.end(), bw("10")) != f1.end());
  auto f2 = flags(2);
  CHECK(f2.size() == 6);
  for (const auto& w : f2) {
    CHECK(w.size() == 3);
    CHECK_FALSE(w.is_constant());
  }
}

TEST_CASE("baire embedding of finite words") {
  CHECK(baire_embed_prefix(nw("0,2")) == bw("1001"));
  CHECK(baire_embed_prefix(NatWord{}).empty());
  CHECK(baire_embed_prefix(nw("1")) == bw("01"));
}

TEST_CASE("round trips over short words") {
  for (std::size_t n = 0; n <= 8; ++n)
    for (std::uint64_t e = 0; e < (std::uint64_t{1} << n); ++e) {
      std::vector<std::uint8_t> bits;
      for (std::size_t i = 0; i < n; ++i) bits.push_back(static_cast<std::uint8_t>((e >> i) & 1));
      BitWord s(std::move(bits));
      auto ht = head_tail(s);
      CHECK(ht.head.concat(BitWord::constant(ht.zero_tail, 0)) == s);
      if (ht.zero_tail == 0) CHECK(encode_check(decode_hat(s)) == s);
      CHECK(stretch(s).size() == triangular(n));
    }
}
