#include <doctest.h>

#include <cmath>

#include "mobiusflat/expr.hpp"

using namespace mflat;

TEST_CASE("expr parse and eval") {
    Expr e = Expr::parse("2*x + sin(y)^2 / (1 + x)");
    double x = 0.3, y = 1.2;
    double expect = 2 * x + std::sin(y) * std::sin(y) / (1 + x);
    CHECK(e.eval(x, y) == doctest::Approx(expect).epsilon(1e-14));

    CHECK(Expr::parse("5/2").eval(0, 0) == doctest::Approx(2.5));
    CHECK(Expr::parse("x^-2").eval(2, 0) == doctest::Approx(0.25));
    CHECK(Expr::parse("x^(-2)").eval(2, 0) == doctest::Approx(0.25));
    CHECK(Expr::parse("-x^2").eval(3, 0) == doctest::Approx(-9.0));
    CHECK(Expr::parse("cosh(x)*sinh(y)").eval(0.5, 0.7) ==
          doctest::Approx(std::cosh(0.5) * std::sinh(0.7)));
}

TEST_CASE("expr parse errors carry position") {
    CHECK_THROWS_WITH_AS(Expr::parse("2 +"), doctest::Contains("column"), Error);
    CHECK_THROWS_AS(Expr::parse("foo(x)"), Error);
    CHECK_THROWS_AS(Expr::parse("x^y"), Error);
    CHECK_THROWS_AS(Expr::parse("(x"), Error);
    try {
        Expr::parse("2 +");
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == "parse-error");
    }
}

TEST_CASE("differentiation is closed and exact") {
    Expr e = Expr::parse("exp(x*y) * cos(x) + y^3 / x");
    Expr ex = e.diff(Axis::X);
    double x = 0.7, y = -0.4;
    double expect = std::exp(x * y) * (y * std::cos(x) - std::sin(x)) - y * y * y / (x * x);
    CHECK(ex.eval(x, y) == doctest::Approx(expect).epsilon(1e-13));

    // d/dy of d/dx stays an Expr and matches the mixed partial.
    Expr exy = ex.diff(Axis::Y);
    double h = 1e-6;
    double fd = (ex.eval(x, y + h) - ex.eval(x, y - h)) / (2 * h);
    CHECK(exy.eval(x, y) == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("division checked at sample time") {
    Expr e = Expr::parse("1 / x");
    CHECK(e.eval(2.0, 0.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(e.eval(0.0, 0.0), Error);
}

TEST_CASE("scaled substitution") {
    Expr e = Expr::parse("x^2 + y");
    Expr s = e.substitute_scaled(0.5, 3.0);
    CHECK(s.eval(2.0, 1.0) == doctest::Approx(1.0 + 3.0));
}

TEST_CASE("printing round-trips through the parser") {
    Expr e = Expr::parse("2*x + sin(y)^2 / (1 + x) - cosh(x*y)");
    Expr r = Expr::parse(e.str());
    CHECK(r.eval(0.3, 0.9) == doctest::Approx(e.eval(0.3, 0.9)).epsilon(1e-15));
}
