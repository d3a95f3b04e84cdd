#include <doctest.h>

#include <cmath>

#include "rydgate/philox.hpp"

using rydgate::Philox4x32;

// Known-answer vectors of the reference Philox4x32-10 implementation.
TEST_CASE("philox known answers") {
  using C = Philox4x32::Counter;
  CHECK(Philox4x32(0)(C{0, 0, 0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32(0xffffffffffffffffULL)(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32(0x299f31d0a4093822ULL)(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("uniforms stay in the open interval") {
  CHECK(Philox4x32::open_unit(0, 0) > 0.0);
  CHECK(Philox4x32::open_unit(0xffffffff, 0xffffffff) < 1.0);
}

TEST_CASE("normals have unit moments") {
  const Philox4x32 g(42);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (std::uint32_t i = 0; i < n / 2; ++i) {
    const auto [z0, z1] = g.normals({i, 0, 0, 0});
    s += z0 + z1;
    s2 += z0 * z0 + z1 * z1;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("different keys give different streams") {
  CHECK(Philox4x32(1)({0, 0, 0, 0}) != Philox4x32(2)({0, 0, 0, 0}));
}
