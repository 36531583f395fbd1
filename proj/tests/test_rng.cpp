#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "ndstc/rng.hpp"

using ndstc::RngStream;

TEST_CASE("identical stream parameters reproduce the sequence") {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("streams with different ids are distinct") {
  RngStream a(42, 7), b(42, 8), c(43, 7);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 64; ++i) {
    const auto x = a.next_u64();
    same_ab += (x == b.next_u64());
    same_ac += (x == c.next_u64());
  }
  CHECK(same_ab == 0);
  CHECK(same_ac == 0);
}

TEST_CASE("derive does not depend on the parent position") {
  RngStream a(99, 1);
  RngStream child_before = a.derive(5);
  for (int i = 0; i < 37; ++i) a.next_u64();
  RngStream child_after = a.derive(5);
  for (int i = 0; i < 20; ++i)
    CHECK(child_before.next_u64() == child_after.next_u64());
}

TEST_CASE("derived children differ from each other and the parent") {
  RngStream a(99, 1);
  RngStream c0 = a.derive(0), c1 = a.derive(1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 32; ++i) {
    seen.insert(a.next_u64());
    seen.insert(c0.next_u64());
    seen.insert(c1.next_u64());
  }
  CHECK(seen.size() == 96);  // collisions have probability ~2^-58
}

TEST_CASE("next_double spans [0, 1) with the right mean") {
  RngStream a(1, 2);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double x = a.next_double();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    sum += x;
  }
  CHECK(std::abs(sum / 20000.0 - 0.5) < 0.01);
}

TEST_CASE("gaussian moments") {
  RngStream a(3, 4);
  const int n = 40000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = a.next_gaussian();
    s1 += x;
    s2 += x * x;
  }
  CHECK(std::abs(s1 / n) < 0.02);
  CHECK(std::abs(s2 / n - 1.0) < 0.03);
}

TEST_CASE("complex gaussian has the requested total variance") {
  RngStream a(5, 6);
  const int n = 20000;
  double p = 0.0;
  for (int i = 0; i < n; ++i) p += std::norm(a.next_cgaussian(0.25));
  CHECK(std::abs(p / n - 0.25) < 0.01);
}

TEST_CASE("next_below stays in range and covers it") {
  RngStream a(7, 8);
  std::vector<int> counts(10, 0);
  for (int i = 0; i < 10000; ++i) {
    const auto x = a.next_below(10);
    REQUIRE(x < 10);
    ++counts[static_cast<int>(x)];
  }
  for (int c : counts) CHECK(c > 800);
}

TEST_CASE("algorithm id is pinned") {
  CHECK(std::string(RngStream::algorithm_id()) == "splitmix64-v1");
}
