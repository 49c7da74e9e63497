#include <doctest.h>

#include <cmath>
#include <set>

#include "hardedge/rng.hpp"

using namespace hardedge;

TEST_CASE("philox4x64-10 known answers") {
  // Reference outputs of numpy.random.Philox (4x64, 10 rounds).
  const auto zero = philox4x64({1, 0, 0, 0}, {0, 0});
  CHECK(zero[0] == 0x02f4ba6408e4d89bULL);
  CHECK(zero[1] == 0x3dd62b0b9ca8c5b2ULL);
  CHECK(zero[2] == 0x1c8667a55d902e79ULL);
  CHECK(zero[3] == 0x907d7a052fd5b4dcULL);

  const auto keyed = philox4x64({7, 3, 0, 0}, {0x0123456789abcdefULL, 42});
  CHECK(keyed[0] == 0xd22cb650b2d10debULL);
  CHECK(keyed[1] == 0xa3259fade2cdc980ULL);
  CHECK(keyed[2] == 0xc47174b2aa1d4a53ULL);
  CHECK(keyed[3] == 0x517a250a538613bbULL);
}

TEST_CASE("streams are pure functions of their descriptor") {
  const RngStream a{123, 4};
  const RngStream b{123, 4};
  DrawSource x = a.draw(17);
  DrawSource y = b.draw(17);
  for (int i = 0; i < 100; ++i) CHECK(x.next_u64() == y.next_u64());

  // Creation order does not matter.
  DrawSource late = a.draw(5);
  DrawSource early = RngStream{123, 4}.draw(5);
  CHECK(late.normal() == early.normal());
}

TEST_CASE("distinct draws, streams and children differ") {
  const RngStream s{9, 0};
  CHECK(s.draw(0).next_u64() != s.draw(1).next_u64());
  CHECK(s.draw(0).next_u64() != RngStream{9, 1}.draw(0).next_u64());
  CHECK(s.draw(0).next_u64() != RngStream{10, 0}.draw(0).next_u64());
  CHECK(s.sequential().next_u64() != s.draw(0).next_u64());
  CHECK(s.child(0) != s.child(1));
  CHECK(s.child(3) == RngStream{9, 0}.child(3));
  CHECK(s.child(0).draw(0).next_u64() != s.draw(0).next_u64());

  std::set<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 1000; ++k) seen.insert(s.child(k).draw(0).next_u64());
  CHECK(seen.size() == 1000);
}

TEST_CASE("uniform, below and normal ranges") {
  DrawSource source = RngStream{1, 2}.sequential();
  double sum = 0.0, sum_sq = 0.0;
  constexpr int kCount = 200000;
  for (int i = 0; i < kCount; ++i) {
    const double u = source.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double v = source.uniform_open();
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
    REQUIRE(source.below(7) < 7);
    const double z = source.normal();
    sum += z;
    sum_sq += z * z;
  }
  CHECK(std::abs(sum / kCount) < 5.0 / std::sqrt(kCount));
  CHECK(std::abs(sum_sq / kCount - 1.0) < 5.0 * std::sqrt(2.0 / kCount));
  CHECK(source.below(1) == 0);
}
