#include "cantor/reference.hpp"

#include <stdexcept>

namespace cantor::ref {

namespace {

Rational half_pow(std::size_t n) {
  Rational r(1);
  r /= Rational(mpz_class(1) << static_cast<mp_bitcnt_t>(n));
  return r;
}

}  // namespace

BitWord encode_check(const NatWord& u) {
  std::vector<std::uint8_t> out;
  for (auto k : u.entries()) {
    out.insert(out.end(), k, 0);
    out.push_back(1);
  }
  return BitWord(std::move(out));
}

NatWord decode_hat(const BitWord& s) {
  std::vector<std::uint64_t> out;
  std::uint64_t run = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i]) {
      out.push_back(run);
      run = 0;
    } else {
      ++run;
    }
  }
  return NatWord(std::move(out));
}

BitWord head(const BitWord& s) {
  std::size_t n = s.size();
  while (n > 0 && s[n - 1] == 0) --n;
  return s.prefix(n);
}

std::size_t zero_tail(const BitWord& s) { return s.size() - head(s).size(); }

std::size_t ones(const BitWord& s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) n += s[i];
  return n;
}

QuaternaryExpansion quaternary(const Rational& r, std::size_t count) {
  if (r < 0 || r >= 1) throw std::invalid_argument("quaternary expansion needs 0 <= r < 1");
  QuaternaryExpansion out;
  out.den = r.get_den();
  mpz_class rem = r.get_num();
  out.remainders.push_back(rem);
  for (std::size_t i = 0; i < count; ++i) {
    mpz_class scaled = rem * 4;
    mpz_class d = scaled / out.den;
    rem = scaled - d * out.den;
    out.digits.push_back(static_cast<int>(d.get_si()));
    out.remainders.push_back(rem);
  }
  return out;
}

Rational u1_measure() { return Rational(1, 4) / (1 - Rational(1, 4)); }

Rational u2_tail(std::size_t len) {
  if (len < 1) throw std::invalid_argument("u2_tail needs len >= 1");
  // Pairs n > m > 0 with n + m + 1 > len: Σ_m 2^-(m+1) 2^-max(m, len-m-1).
  std::size_t m0 = len / 2;  // ceil((len - 1) / 2)
  if (m0 == 0) m0 = 1;
  return Rational(static_cast<long>(m0) - 1) * half_pow(len) + Rational(2, 3) * half_pow(2 * m0);
}

bool inside_u2(const BitWord& w) {
  if (w.empty()) return false;
  if (w[0] == 1) return true;
  std::size_t n = 0;
  while (n < w.size() && w[n] == 0) ++n;
  std::size_t m = 0;
  while (n + m < w.size() && w[n + m] == 1) ++m;
  return m > 0 && n > m && n + m < w.size() && w[n + m] == 0;
}

Rational antichain_measure(const std::vector<BitWord>& words) {
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j)
      if (i != j && words[i].is_prefix_of(words[j])) throw std::logic_error("words do not form an antichain");
  Rational m = 0;
  for (const auto& w : words) m += half_pow(w.size());
  return m;
}

Rational cylinder_count_measure(const std::vector<BitWord>& words, const BitWord& s, std::size_t depth) {
  if (s.size() > depth) throw std::invalid_argument("prefix longer than the enumeration depth");
  std::size_t free = depth - s.size();
  std::uint64_t hits = 0, total = std::uint64_t{1} << free;
  for (std::uint64_t e = 0; e < total; ++e) {
    std::vector<std::uint8_t> bits(s.bits());
    for (std::size_t i = 0; i < free; ++i) bits.push_back(static_cast<std::uint8_t>((e >> (free - 1 - i)) & 1));
    BitWord x(std::move(bits));
    for (const auto& w : words)
      if (w.size() <= depth && w.is_prefix_of(x)) {
        ++hits;
        break;
      }
  }
  return ratio(static_cast<unsigned long>(hits), static_cast<unsigned long>(total));
}

Rational canonical_local(const Rational& d, const BitWord& w) {
  if (d == 1) return 1;
  if (d == 0) return 0;
  mpz_class den = d.get_den();
  std::size_t n = mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
  mpz_class k = d.get_num();
  if (w.size() >= n) {
    mpz_class v = 0;
    for (std::size_t i = 0; i < n; ++i) v = v * 2 + w[i];
    return v < k ? 1 : 0;
  }
  mpz_class v = 0;
  for (std::size_t i = 0; i < w.size(); ++i) v = v * 2 + w[i];
  std::size_t rest = n - w.size();
  mpz_class lo = v << static_cast<mp_bitcnt_t>(rest);
  mpz_class hi = (v + 1) << static_cast<mp_bitcnt_t>(rest);
  mpz_class inside = 0;
  if (k > lo) inside = (k < hi ? k : hi) - lo;
  return Rational(inside) / Rational(mpz_class(1) << static_cast<mp_bitcnt_t>(rest));
}

SeriesReference w_f_series(const Rational& w, std::size_t count) {
  SeriesReference out;
  if (w == Rational(1, 3)) {
    out.sum = u1_measure();
    out.f.assign(count, Rational(1));
    return out;
  }
  std::size_t h = 0;
  auto q = quaternary(w, count + 2);
  for (std::size_t i = 0;; ++i) {
    if (i >= q.digits.size()) q = quaternary(w, 2 * q.digits.size());
    if (q.digits[i] == 1) continue;
    if (q.digits[i] != 0) throw std::logic_error("w exceeds 1/3");
    h = i + 1;
    break;
  }
  if (q.digits.size() < count + 2) q = quaternary(w, count + 2);
  for (std::size_t n = 1; n <= count; ++n)
    out.f.push_back(n < h ? Rational(1) : ratio(q.digits[n], 4));
  Rational s = 0;
  for (std::size_t n = 1; n < h; ++n) s += half_pow(2 * n);
  s += Rational(q.remainders[h]) / Rational(q.den) * half_pow(2 * h);
  out.sum = s;
  return out;
}

bool BruteTree::member(const BitWord& t) const {
  for (std::size_t n = 0; n <= t.size(); ++n) {
    BitWord p = t.prefix(n);
    if (!nodes.count(p)) return false;
    if (!nodes.count(p.append(0)) && !nodes.count(p.append(1))) return true;
  }
  return true;
}

std::size_t BruteTree::depth() const {
  std::size_t d = 0;
  for (const auto& n : nodes) d = std::max(d, n.size());
  return d;
}

Rational inherited_label(const std::map<BitWord, Rational>& labels, const Rational& fallback, const BitWord& t) {
  for (std::size_t n = t.size() + 1; n-- > 0;) {
    auto it = labels.find(t.prefix(n));
    if (it != labels.end()) return it->second;
  }
  return fallback;
}

namespace {

bool labels_settled(const std::map<BitWord, Rational>& labels, const BitWord& t) {
  for (const auto& [k, v] : labels)
    if (k.size() > t.size() && t.is_prefix_of(k)) return false;
  return true;
}

Rational brute_word(const BruteTree& tree, const std::map<BitWord, Rational>& labels, const Rational& fallback,
                    const BitWord& w) {
  BitWord t;
  std::size_t pos = 0;
  for (std::size_t k = 0;; ++k) {
    std::size_t len = k + 1;
    if (pos + len > w.size()) {
      if (t.size() < tree.depth() || !labels_settled(labels, t))
        throw std::logic_error("enumeration depth does not reach a settled node");
      return inherited_label(labels, fallback, t);
    }
    BitWord block = w.drop(pos).prefix(len);
    pos += len;
    bool constant = true;
    for (std::size_t i = 1; i < len; ++i) constant = constant && block[i] == block[0];
    if (!constant) return canonical_local(inherited_label(labels, fallback, t), w.drop(pos));
    t = t.append(block[0]);
    if (!tree.member(t)) return 0;
  }
}

}  // namespace

Rational brute_offspring(const BruteTree& t, const std::map<BitWord, Rational>& labels, const Rational& fallback,
                         const BitWord& s, std::size_t depth) {
  if (s.size() > depth) throw std::invalid_argument("prefix longer than the enumeration depth");
  std::size_t free = depth - s.size();
  std::uint64_t total = std::uint64_t{1} << free;
  Rational sum = 0;
  for (std::uint64_t e = 0; e < total; ++e) {
    std::vector<std::uint8_t> bits(s.bits());
    for (std::size_t i = 0; i < free; ++i) bits.push_back(static_cast<std::uint8_t>((e >> (free - 1 - i)) & 1));
    sum += brute_word(t, labels, fallback, BitWord(std::move(bits)));
  }
  return sum / Rational(static_cast<long>(total));
}

RatInterval preset_cantor_interval(const std::string& preset, const std::vector<Rational>& p, const BitWord& t) {
  if (preset == "constant") return RatInterval::point(p.at(0));
  if (preset == "interval") {
    NatWord u = ref::decode_hat(t);
    mpz_class bits = 0;
    for (std::size_t i = 0; i < u.size(); ++i) bits = 2 * bits + static_cast<long>(u[i] % 2);
    Rational scale = half_pow(u.size()), w = p.at(1) - p.at(0);
    Rational lo = p.at(0) + w * Rational(bits) * scale;
    return RatInterval(lo, lo + w * scale);
  }
  if (preset == "injective") {
    mpz_class bits = 0;
    for (std::size_t i = 0; i < t.size(); ++i) bits = 2 * bits + t[i];
    Rational scale = half_pow(t.size()), w = 1 - 2 * p.at(0);
    Rational lo = p.at(0) + w * Rational(bits) * scale;
    return RatInterval(lo, lo + w * scale);
  }
  throw std::invalid_argument("unknown preset " + preset);
}

Rational preset_at_zero(const std::string& preset, const std::vector<Rational>& p) {
  if (preset == "constant") return p.at(0);
  if (preset == "interval") return p.at(0);
  if (preset == "injective") return 1 - p.at(0);  // h(0^ω) = 1^ω
  throw std::invalid_argument("unknown preset " + preset);
}

Cardinality census_brute(const TreePresentation& t, std::size_t max_head, std::size_t max_period, std::size_t depth) {
  constexpr std::size_t kKey = 64;
  std::set<BitWord> found;
  for (std::size_t hl = 0; hl <= max_head; ++hl)
    for (std::uint64_t hb = 0; hb < (std::uint64_t{1} << hl); ++hb)
      for (std::size_t pl = 1; pl <= max_period; ++pl)
        for (std::uint64_t pb = 1; pb < (std::uint64_t{1} << pl); ++pb) {
          std::vector<std::uint8_t> bits;
          for (std::size_t i = 0; i < hl; ++i) bits.push_back(static_cast<std::uint8_t>((hb >> i) & 1));
          while (bits.size() < std::max(depth, kKey))
            for (std::size_t i = 0; i < pl; ++i) bits.push_back(static_cast<std::uint8_t>((pb >> i) & 1));
          BitWord x(std::move(bits));
          bool in = true;
          for (std::size_t n = 0; n <= depth && in; ++n) in = t.member(x.prefix(n));
          if (in) found.insert(x.prefix(kKey));
        }
  std::size_t leaves = 0;
  const auto& nodes = t.explicit_nodes();
  for (const auto& n : nodes)
    if (!nodes.count(n.append(0)) && !nodes.count(n.append(1))) ++leaves;
  if (found.size() > leaves) return Cardinality::continuum();
  return Cardinality::finite(found.size());
}

}  // namespace cantor::ref
