// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "cachebc/model.hpp"
#include "cachebc/rng.hpp"

using namespace cachebc;

TEST_CASE("validate computes derived fields") {
  const SystemParams p = validate(4, 8, 4.0, 1.0, 0.0);
  CHECK(p.K == 4);
  CHECK(p.N == 8);
  CHECK(p.mu == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.delta == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("validate rejects out-of-range tuples by name") {
  CHECK_THROWS_WITH_AS(validate(4, 8, 4.0, 0.5, 0.7),
                       doctest::Contains("beta exceeds alpha"), RangeError);
  CHECK_THROWS_WITH_AS(validate(4, 3, 1.0, 1.0, 0.0),
                       doctest::Contains("N below K"), RangeError);
  CHECK_THROWS_AS(validate(0, 3, 1.0, 1.0, 0.0), RangeError);
  CHECK_THROWS_AS(validate(2, 3, -0.5, 1.0, 0.0), RangeError);
  CHECK_THROWS_AS(validate(2, 3, 3.5, 1.0, 0.0), RangeError);
  CHECK_THROWS_AS(validate(2, 3, 1.0, 1.5, 0.0), RangeError);
  CHECK_THROWS_AS(validate(2, 3, 1.0, 0.5, -0.1), RangeError);
}

TEST_CASE("validate is total over fuzzed tuples") {
  Xoshiro256ss rng(7);
  const double specials[] = {std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::infinity(),
                             -std::numeric_limits<double>::infinity(),
                             -1.0,
                             0.0,
                             0.5,
                             1.0,
                             2.0};
  for (int i = 0; i < 5000; ++i) {
    const int K = static_cast<int>(rng.next_below(12)) - 2;
    const int N = static_cast<int>(rng.next_below(16)) - 2;
    const double M = specials[rng.next_below(8)] * (1 + rng.next_below(4));
    const double a = specials[rng.next_below(8)];
    const double b = specials[rng.next_below(8)];
    try {
      const SystemParams p = validate(K, N, M, a, b);
      CHECK(p.mu >= 0.0);
      CHECK(p.mu <= 1.0);
      CHECK(p.delta >= 0.0);
      CHECK(p.delta <= 1.0);
    } catch (const RangeError&) {
      // named rejection is the other legal outcome
    }
  }
}

TEST_CASE("derived fields round-trip") {
  Xoshiro256ss rng(11);
  for (int i = 0; i < 2000; ++i) {
    const int K = 1 + static_cast<int>(rng.next_below(16));
    const int N = K + static_cast<int>(rng.next_below(32));
    const double M = rng.next_double() * N;
    const double alpha = rng.next_double();
    const double beta = rng.next_double() * alpha;
    const SystemParams p = validate(K, N, M, alpha, beta);
    CHECK(p.mu * N == doctest::Approx(M).epsilon(1e-12));
    CHECK(p.delta + p.beta == doctest::Approx(p.alpha).epsilon(1e-12));
  }
}

TEST_CASE("validate_delta realizes delta as (alpha = delta, beta = 0)") {
  const SystemParams p = validate_delta(3, 6, 2.0, 0.7);
  CHECK(p.alpha == 0.7);
  CHECK(p.beta == 0.0);
  CHECK(p.delta == 0.7);
  CHECK_THROWS_AS(validate_delta(3, 6, 2.0, 1.2), RangeError);
}

TEST_CASE("gndt point keeps gdof * value = K") {
  const SystemParams p = validate(4, 8, 4.0, 1.0, 0.0);
  const GndtPoint pt =
      make_gndt_point(p, GndtKind::CentralizedAchievable, 2.0 / 3.0);
  REQUIRE(pt.gdof.has_value());
  CHECK(*pt.gdof * pt.value == doctest::Approx(4.0).epsilon(1e-12));

  const GndtPoint zero =
      make_gndt_point(p, GndtKind::CentralizedAchievable, 0.0);
  CHECK_FALSE(zero.gdof.has_value());
  CHECK_THROWS_AS(make_gndt_point(p, GndtKind::LowerBound, -0.25), RangeError);
}
