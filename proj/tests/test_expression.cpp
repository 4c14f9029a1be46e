#include <doctest.h>

#include "dphase/errors.hpp"
#include "dphase/expression.hpp"

using dphase::Expression;
using dphase::ParseError;

TEST_SUITE("expression") {

TEST_CASE("constants and arithmetic") {
  CHECK(Expression::parse("0.5").eval(0, 0) == doctest::Approx(0.5));
  CHECK(Expression::parse("0.5").is_constant());
  CHECK(Expression::parse("1+2*3").eval(0, 0) == doctest::Approx(7.0));
  CHECK(Expression::parse("(1+2)*3").eval(0, 0) == doctest::Approx(9.0));
  CHECK(Expression::parse("2^3^2").eval(0, 0) == doctest::Approx(512.0));
  CHECK(Expression::parse("-2^2").eval(0, 0) == doctest::Approx(-4.0));
  CHECK(Expression::parse("7/2").eval(0, 0) == doctest::Approx(3.5));
}

TEST_CASE("variables and functions") {
  auto e = Expression::parse("0.4+0.1*abs(x-y)");
  CHECK(!e.is_constant());
  CHECK(e.eval(0.0, 1.0) == doctest::Approx(0.5));
  CHECK(e.eval(1.0, 0.0) == doctest::Approx(0.5));
  CHECK(Expression::parse("min(x, y)").eval(2, 3) == doctest::Approx(2));
  CHECK(Expression::parse("max(x, y)").eval(2, 3) == doctest::Approx(3));
  CHECK(Expression::parse("sin(x)^2 + cos(x)^2").eval(0.7, 0) ==
        doctest::Approx(1.0));
  CHECK(Expression::parse("log(exp(x))").eval(1.25, 0) ==
        doctest::Approx(1.25));
}

TEST_CASE("parse errors carry the byte offset") {
  CHECK_THROWS_AS(Expression::parse(""), ParseError);
  try {
    Expression::parse("x+");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
  }
  try {
    Expression::parse("0.4 + zz");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 6);
  }
  CHECK_THROWS_AS(Expression::parse("min(x)"), ParseError);
  CHECK_THROWS_AS(Expression::parse("(1+2"), ParseError);
  CHECK_THROWS_AS(Expression::parse("1 2"), ParseError);
}

TEST_CASE("evaluation rejects singular operations") {
  CHECK_THROWS_AS(Expression::parse("1/(x-x)").eval(1, 1), ParseError);
  CHECK_THROWS_AS(Expression::parse("log(x-1)").eval(0.5, 0), ParseError);
  CHECK(Expression::parse("log(x)").eval(2.0, 0) ==
        doctest::Approx(std::log(2.0)));
}

}  // TEST_SUITE
