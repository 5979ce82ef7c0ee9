#include "cantor/lasso.hpp"

#include <numeric>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

BitWord primitive_root(const BitWord& p) {
  const std::size_t n = p.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = p[i] == p[i - d];
    if (ok) return p.prefix(d);
  }
  return p;
}

BitWord rotate(const BitWord& p, std::size_t k) {
  k %= p.size();
  return p.drop(k) + p.prefix(k);
}

}  // namespace

Lasso::Lasso(BitWord head, BitWord period) {
  if (period.empty()) throw DomainError("eventually periodic sequence needs a nonempty period");
  period = primitive_root(period);
  // absorb the end of the head into the period while possible
  while (!head.empty() && head[head.size() - 1] == period[period.size() - 1]) {
    period = rotate(period, period.size() - 1);
    head = head.prefix(head.size() - 1);
  }
  head_ = std::move(head);
  period_ = std::move(period);
}

int Lasso::bit_at(std::uint64_t n) const {
  if (n < head_.size()) return head_[n];
  return period_[(n - head_.size()) % period_.size()];
}

BitWord Lasso::prefix(std::size_t n) const {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>(bit_at(i));
  return BitWord(std::move(bits));
}

Lasso Lasso::drop(std::size_t n) const {
  if (n <= head_.size()) return Lasso(head_.drop(n), period_);
  return Lasso(BitWord{}, rotate(period_, (n - head_.size()) % period_.size()));
}

bool Lasso::in_N() const { return ones_count(period_).ell > 0; }

std::size_t Lasso::head_length_before_zeros() const { return head_tail(head_).head.size(); }

Lasso interleave(const Lasso& x, const Lasso& y) {
  std::size_t start = std::max(x.head().size(), y.head().size());
  std::size_t len = std::lcm(x.period().size(), y.period().size());
  BitWord head = interleave(x.prefix(start), y.prefix(start));
  BitWord period = interleave(x.drop(start).prefix(len), y.drop(start).prefix(len));
  return Lasso(std::move(head), std::move(period));
}

std::pair<Lasso, Lasso> deinterleave(const Lasso& z) {
  std::size_t start = z.head().size() + (z.head().size() % 2);
  std::size_t len = z.period().size() * 2;
  auto pick = [&](std::size_t offset) {
    std::vector<std::uint8_t> head, period;
    for (std::size_t i = offset; i < start; i += 2) head.push_back(static_cast<std::uint8_t>(z.bit_at(i)));
    for (std::size_t i = start + offset; i < start + len; i += 2)
      period.push_back(static_cast<std::uint8_t>(z.bit_at(i)));
    return Lasso(BitWord(std::move(head)), BitWord(std::move(period)));
  };
  return {pick(0), pick(1)};
}

}  // namespace cantor
