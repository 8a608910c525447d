#include "doctest.h"
#include "seqauction/rational.hpp"

#include <stdexcept>

using seqauction::Rational;

TEST_CASE("rational arithmetic and canonical form") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK((a + b).str() == "1/2");
  CHECK(Rational(4, -8).str() == "-1/2");
  CHECK(Rational(0).str() == "0/1");
  CHECK(Rational(5).str() == "5/1");
}

TEST_CASE("rational parse round-trip") {
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("5/1") == Rational(5));
  CHECK(Rational::parse("-3/2") == Rational(-3, 2));
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational::parse(Rational(22, 7).str()) == Rational(22, 7));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("rational ordering is exact") {
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK(Rational(1, 3) > Rational(33, 100));
  CHECK(Rational(2, 6) == Rational(1, 3));
  CHECK(abs(Rational(-7, 2)) == Rational(7, 2));
}

TEST_CASE("floor_div counts grid steps") {
  Rational delta(1, 16);
  CHECK(Rational(1).floor_div(delta) == 16);
  CHECK(Rational(17, 16).floor_div(delta) == 17);
  CHECK(Rational(33, 32).floor_div(delta) == 16);  // 33/32 = 16.5 steps
  CHECK(Rational(0).floor_div(delta) == 0);
  CHECK(Rational(-1, 32).floor_div(delta) == -1);
  CHECK_THROWS_AS(Rational(1).floor_div(Rational(0)), std::invalid_argument);
}

TEST_CASE("no precision loss in long chains") {
  Rational sum;
  for (int k = 1; k <= 200; ++k) sum += Rational(1, k);
  Rational again;
  for (int k = 200; k >= 1; --k) again += Rational(1, k);
  CHECK(sum == again);
}
