// One line per acceptance criterion; the exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "cantor/verify.hpp"

namespace {

struct Criterion {
  int id;
  const char* title;
  const char* suite;
  std::size_t cases;
};

const std::vector<Criterion> kCriteria{
    {1, "golden values mu(U1) = 1/3, mu(U2) = 2/3", "golden", 0},
    {2, "dualistic_of_measure exact on 500 random rationals", "dualistic-measure", 500},
    {3, "spine density bound for the same 500 sets", "spine-density", 500},
    {4, "branch-average law on 200 random trees", "branch-lemma", 200},
    {5, "offspring bounds equal cylinder enumeration", "brute-force", 40},
    {6, "approximation laws to depth 10", "approximation", 0},
    {7, "second reduction behavior", "second-reduction", 0},
    {8, "first reduction behavior", "first-reduction", 20},
    {9, "third reduction laws", "third-reduction", 0},
    {10, "clopen laws", "clopen-laws", 1000},
    {11, "solid countable range", "countable-range", 0},
    {12, "codec round trips", "codec", 100},
    {13, "census against brute force", "census", 100},
};

constexpr std::uint64_t kSeed = 20240601;

}  // namespace

int main() {
  int failed = 0;
  for (const auto& c : kCriteria) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = cantor::run_suite(c.suite, kSeed, c.cases);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %2d  %-48s %zu/%zu  (%.2fs)\n", r.ok() ? "PASS" : "FAIL", c.id, c.title, r.passed,
                r.cases, secs);
    for (const auto& f : r.failures) std::printf("     - %s\n", f.c_str());
    if (!r.ok()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
