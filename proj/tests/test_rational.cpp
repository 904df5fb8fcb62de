#include <doctest.h>

#include "mlab/errors.hpp"
#include "mlab/rational.hpp"

using mlab::parse_rational;
using mlab::Rational;
using mlab::to_string;

TEST_CASE("parses integers and fractions exactly") {
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("1/3") == Rational(1) / 3);
  CHECK(parse_rational("-2/4") == Rational(-1) / 2);  // canonicalized
  CHECK(to_string(parse_rational("-2/4")) == "-1/2");
  CHECK(to_string(parse_rational("8")) == "8");
}

TEST_CASE("rejects malformed literals") {
  CHECK_THROWS_AS(parse_rational(""), mlab::ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), mlab::ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), mlab::ParseError);
  CHECK_THROWS_AS(parse_rational("1/"), mlab::ParseError);
  CHECK_THROWS_AS(parse_rational("/2"), mlab::ParseError);
  CHECK_THROWS_AS(parse_rational("a"), mlab::ParseError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), mlab::ParseError);
  CHECK_THROWS_AS(parse_rational("1 / 2"), mlab::ParseError);
  CHECK_THROWS_AS(parse_rational("0x10"), mlab::ParseError);
}

TEST_CASE("round trips through to_string") {
  for (int num = -12; num <= 12; ++num)
    for (int den = 1; den <= 9; ++den) {
      Rational value = Rational(num) / den;
      CHECK(parse_rational(to_string(value)) == value);
    }
}
