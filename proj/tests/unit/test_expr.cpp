#include <cmath>

#include <doctest.h>

#include "orlicz_lab/errors.hpp"
#include "orlicz_lab/expr.hpp"

using orlicz_lab::Expr;

TEST_CASE("arithmetic and precedence") {
  CHECK(Expr::parse("1 + 2 * 3")(0) == 7.0);
  CHECK(Expr::parse("(1 + 2) * 3")(0) == 9.0);
  CHECK(Expr::parse("2^3^2")(0) == 512.0);
  CHECK(Expr::parse("-2^2")(0) == -4.0);
  CHECK(Expr::parse("10 / 4 - 1")(0) == 1.5);
  CHECK(Expr::parse("1e-3 * 2")(0) == doctest::Approx(2e-3));
}

TEST_CASE("variables and functions") {
  CHECK(Expr::parse("2^(-n)")(3) == 0.125);
  CHECK(Expr::parse("1 + 1/n")(4) == 1.25);
  CHECK(Expr::parse("w * w")(0, -0.5) == 0.25);
  CHECK(Expr::parse("exp(log(n))")(7) == doctest::Approx(7.0));
  CHECK(Expr::parse("n")(5) == 5.0);
}

TEST_CASE("keeps its source") { CHECK(Expr::parse("1 + n").source() == "1 + n"); }

TEST_CASE("rejects malformed input") {
  CHECK_THROWS(Expr::parse("1 +"));
  CHECK_THROWS(Expr::parse("(1 + 2"));
  CHECK_THROWS(Expr::parse("x + 1"));
  CHECK_THROWS(Expr::parse("system(1)"));
  CHECK_THROWS(Expr::parse(""));
}
