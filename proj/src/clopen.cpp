#include "cantor/clopen.hpp"

#include <algorithm>
#include <memory>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

struct Trie {
  bool marked = false;
  std::unique_ptr<Trie> child[2];
};

void insert(Trie& root, const BitWord& w) {
  Trie* node = &root;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (node->marked) return;
    auto& next = node->child[w[i]];
    if (!next) next = std::make_unique<Trie>();
    node = next.get();
  }
  node->marked = true;
  node->child[0].reset();
  node->child[1].reset();
}

bool collapse(Trie& node) {
  if (node.marked) return true;
  bool full0 = node.child[0] && collapse(*node.child[0]);
  bool full1 = node.child[1] && collapse(*node.child[1]);
  if (full0 && full1) {
    node.marked = true;
    node.child[0].reset();
    node.child[1].reset();
  }
  return node.marked;
}

void emit(const Trie& node, std::vector<std::uint8_t>& path, std::vector<BitWord>& out) {
  if (node.marked) {
    out.emplace_back(path);
    return;
  }
  for (int b = 0; b < 2; ++b) {
    if (!node.child[b]) continue;
    path.push_back(static_cast<std::uint8_t>(b));
    emit(*node.child[b], path, out);
    path.pop_back();
  }
}

std::vector<BitWord> complement_within(const std::vector<BitWord>& words, const BitWord& prefix) {
  std::vector<BitWord> inside;
  for (const auto& w : words) {
    if (w.is_prefix_of(prefix)) return {};
    if (prefix.is_prefix_of(w)) inside.push_back(w);
  }
  if (inside.empty()) return {prefix};
  auto left = complement_within(inside, prefix.append(0));
  auto right = complement_within(inside, prefix.append(1));
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

}  // namespace

ClopenSet ClopenSet::from_words(std::vector<BitWord> words) {
  Trie root;
  for (const auto& w : words) insert(root, w);
  collapse(root);
  ClopenSet out;
  std::vector<std::uint8_t> path;
  emit(root, path, out.words_);
  return out;
}

Rational ClopenSet::measure() const {
  Rational total = 0;
  for (const auto& w : words_) total += pow2(-static_cast<long>(w.size()));
  return total;
}

std::size_t ClopenSet::depth() const {
  std::size_t d = 0;
  for (const auto& w : words_) d = std::max(d, w.size());
  return d;
}

bool ClopenSet::covers(const BitWord& s) const {
  return std::any_of(words_.begin(), words_.end(), [&](const BitWord& w) { return w.is_prefix_of(s); });
}

ClopenSet set_union(const ClopenSet& a, const ClopenSet& b) {
  auto words = a.words();
  words.insert(words.end(), b.words().begin(), b.words().end());
  return ClopenSet::from_words(std::move(words));
}

ClopenSet set_intersection(const ClopenSet& a, const ClopenSet& b) {
  std::vector<BitWord> words;
  for (const auto& x : a.words())
    for (const auto& y : b.words()) {
      if (x.is_prefix_of(y))
        words.push_back(y);
      else if (y.is_prefix_of(x))
        words.push_back(x);
    }
  return ClopenSet::from_words(std::move(words));
}

ClopenSet set_complement(const ClopenSet& a) {
  return ClopenSet::from_words(complement_within(a.words(), BitWord{}));
}

ClopenSet set_difference(const ClopenSet& a, const ClopenSet& b) {
  return set_intersection(a, set_complement(b));
}

ClopenSet concat(const BitWord& s, const ClopenSet& a) {
  std::vector<BitWord> words;
  words.reserve(a.words().size());
  for (const auto& w : a.words()) words.push_back(s + w);
  return ClopenSet::from_words(std::move(words));
}

ClopenSet localize(const ClopenSet& a, const BitWord& s) {
  std::vector<BitWord> words;
  for (const auto& w : a.words()) {
    if (w.is_prefix_of(s)) return ClopenSet::full();
    if (s.is_prefix_of(w)) words.push_back(w.drop(s.size()));
  }
  return ClopenSet::from_words(std::move(words));
}

bool is_subset(const ClopenSet& a, const ClopenSet& b) { return set_difference(a, b).is_empty(); }

ClopenSet canonical_of_measure(const Rational& d) {
  if (d < 0 || d > 1) throw DomainError("canonical clopen needs a measure in [0;1], got " + to_string(d));
  if (d == 1) return ClopenSet::full();
  auto dy = Dyadic::from_rational(d);
  std::vector<BitWord> words;
  std::vector<std::uint8_t> prefix;
  for (unsigned long i = 1; i <= dy.n; ++i) {
    int bit = mpz_tstbit(dy.k.get_mpz_t(), dy.n - i);
    if (bit) {
      auto w = prefix;
      w.push_back(0);
      words.emplace_back(std::move(w));
    }
    prefix.push_back(static_cast<std::uint8_t>(bit));
  }
  return ClopenSet::from_words(std::move(words));
}

ClopenSet subset_of_measure(const ClopenSet& u, const Rational& d) {
  if (!is_dyadic(d)) throw DomainError("subset_of_measure needs a dyadic target, got " + to_string(d));
  Rational total = u.measure();
  if (d <= 0 || d >= total)
    throw DomainError("subset_of_measure needs 0 < d < mu(U); d = " + to_string(d) + ", mu(U) = " + to_string(total));
  std::vector<BitWord> taken;
  Rational remaining = d;
  for (const auto& w : u.words()) {
    Rational cyl = pow2(-static_cast<long>(w.size()));
    if (cyl <= remaining) {
      taken.push_back(w);
      remaining -= cyl;
    } else {
      auto rest = canonical_of_measure(remaining / cyl);
      for (const auto& v : rest.words()) taken.push_back(w + v);
      remaining = 0;
    }
    if (remaining == 0) break;
  }
  return ClopenSet::from_words(std::move(taken));
}

}  // namespace cantor
