#include <doctest.h>

#include <random>
#include <stdexcept>

#include "support/oracles.hpp"
#include "syncwalk/rational.hpp"

using namespace syncwalk;

TEST_CASE("rational literals parse and print canonically") {
  CHECK(rat_from_string("1/3") == Rat(1, 3));
  CHECK(rat_from_string("2/6") == Rat(1, 3));
  CHECK(rat_from_string("-2/6") == Rat(-1, 3));
  CHECK(rat_from_string("7") == Rat(7));
  CHECK(rat_from_string(" 5/8 ") == Rat(5, 8));
  CHECK(rat_from_string("0.25") == Rat(1, 4));
  CHECK(rat_from_string("-1.5") == Rat(-3, 2));
  CHECK(rat_from_string("0.1") == Rat(1, 10));

  CHECK(rat_to_string(Rat(1, 3)) == "1/3");
  CHECK(rat_to_string(Rat(0)) == "0/1");
  CHECK(rat_to_string(Rat(4, 2)) == "2/1");
  CHECK(rat_from_string(rat_to_string(Rat(-22, 7))) == Rat(-22, 7));
}

TEST_CASE("malformed rational literals are rejected") {
  CHECK_THROWS_AS(rat_from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("1/-3"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("--2"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("1e-3"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("1/3/5"), std::invalid_argument);
}

TEST_CASE("doubles convert to their exact binary value") {
  CHECK(rat_from_double(0.5) == Rat(1, 2));
  CHECK(rat_from_double(-0.75) == Rat(-3, 4));
  CHECK(rat_from_double(0.0) == Rat(0));
  // 0.1 is not exactly one tenth in binary
  CHECK(rat_from_double(0.1) == Rat(Int("3602879701896397"), Int("36028797018963968")));
  CHECK(to_double(rat_from_double(0.3333334)) == 0.3333334);
}

TEST_CASE("best rational approximation matches known values") {
  CHECK(best_rational(0.3333334, 100) == Rat(1, 3));
  CHECK(best_rational(0.5, 100) == Rat(1, 2));
  CHECK(best_rational(0.0, 10) == Rat(0));
  CHECK(best_rational(2.0, 10) == Rat(2));
  // classic convergent of pi - 3
  CHECK(best_rational(0.14159265358979312, 113) == Rat(16, 113));
  // exact representables come back exactly
  CHECK(best_rational(0.375, 1000) == Rat(3, 8));
}

TEST_CASE("best rational approximation agrees with the exhaustive oracle") {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 400; ++i) {
    const double x = unif(rng);
    const long long max_den = 1 + static_cast<long long>(rng() % 40);
    const Rat mine = best_rational(x, max_den);
    const Rat ref = testsupport::oracle_best_rational(x, max_den);
    const Rat target = rat_from_double(x);
    CAPTURE(x);
    CAPTURE(max_den);
    CHECK(rat_den(mine) <= max_den);
    // either identical or equally distant (tie broken the same way)
    CHECK(abs(target - mine) == abs(target - ref));
    CHECK(mine == ref);
  }
}

TEST_CASE("best rational rejects bad arguments") {
  CHECK_THROWS_AS(best_rational(0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(best_rational(-0.5, 10), std::invalid_argument);
}

TEST_CASE("integer lcm") {
  CHECK(lcm_int(Int(6), Int(10)) == Int(30));
  CHECK(lcm_int(Int(7), Int(7)) == Int(7));
  CHECK(lcm_int(Int(1), Int(12)) == Int(12));
}
