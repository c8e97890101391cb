#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "bbeta/rng.hpp"
#include "bbeta/sampling.hpp"

using namespace bbeta;

TEST_CASE("philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                      {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("identical seed and stream reproduce the sequence") {
  RngStream a(123, 4), b(123, 4);
  for (int i = 0; i < 1000; ++i) REQUIRE(a() == b());
  for (int i = 0; i < 100; ++i) REQUIRE(a.normal() == b.normal());
  CHECK(a.counter() == b.counter());
}

TEST_CASE("distinct streams and seeds differ") {
  RngStream a(1, 0), b(1, 1), c(2, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    seen.insert(a());
    seen.insert(b());
    seen.insert(c());
  }
  CHECK(seen.size() == 3000);
}

TEST_CASE("uniform lies in the open unit interval with mean 1/2") {
  RngStream r(99);
  const int n = 1'000'000;
  long double s = 0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    s += u;
  }
  const double se = std::sqrt(1.0 / 12 / n);
  CHECK(std::fabs(static_cast<double>(s / n) - 0.5) < 5 * se);
}

TEST_CASE("normal variates have unit variance") {
  RngStream r(5);
  const int n = 1'000'000;
  long double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    s += z;
    s2 += z * z;
  }
  const double m = static_cast<double>(s / n);
  const double v = static_cast<double>(s2 / n) - m * m;
  CHECK(std::fabs(m) < 5 / std::sqrt(double(n)));
  CHECK(std::fabs(v - 1) < 5 * std::sqrt(2.0 / n));
}

TEST_CASE("RngStream satisfies UniformRandomBitGenerator") {
  static_assert(std::uniform_random_bit_generator<RngStream>);
  RngStream r(0);
  CHECK(r.seed() == 0);
  CHECK(r.stream_id() == 0);
  r();
  CHECK(r.counter() == 1);
  r();
  CHECK(r.counter() == 1);  // two 64-bit words per block
  r();
  CHECK(r.counter() == 2);
}

TEST_CASE("gamma golden value for seed 42, stream 0, shape 2") {
  RngStream r(42, 0);
  CHECK(gamma_variate(r, 2.0) == 0x1.30c08b63ba7f2p+0);
}
