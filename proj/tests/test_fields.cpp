#include <doctest.h>

#include <cmath>
#include <random>

#include "test_helpers.hpp"

using namespace mflat;
using namespace mflat::testing;

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(Grid(4, 10, 0, 0, 0.1, 0.1), Error);
    CHECK_THROWS_AS(Grid(10, 10, 0, 0, -0.1, 0.1), Error);
    try {
        Grid(3, 3, 0, 0, 0.1, 0.1);
    } catch (const Error& e) {
        CHECK(e.code() == "grid-too-small");
    }
}

TEST_CASE("derivative of a constant is zero") {
    Grid g = small_grid();
    ScalarField f = ScalarField::constant(g, 7.0).sampled();
    CHECK(f.derivative(Axis::X, 2).max_abs() < 1e-12);
    CHECK(f.derivative(Axis::Y, 4).max_abs() < 1e-12);
}

TEST_CASE("order-2 stencil exact on x^2 at interior nodes") {
    Grid g = small_grid();
    ScalarField f = ScalarField::from_expr(g, Expr::parse("x^2")).sampled();
    ScalarField d = f.derivative(Axis::X, 2);
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i)
            CHECK(d.at(i, j) == doctest::Approx(2.0 * g.x(i)).epsilon(1e-12));
}

TEST_CASE("polynomials up to the stencil order differentiate exactly") {
    Grid g = small_grid();
    ScalarField f4 = ScalarField::from_expr(g, Expr::parse("x^4 + y^3*x")).sampled();
    ScalarField d4 = f4.derivative(Axis::X, 4);
    ScalarField exact = ScalarField::from_expr(g, Expr::parse("4*x^3 + y^3"));
    double err = 0;
    for (int j = 2; j < g.ny - 2; ++j)
        for (int i = 2; i < g.nx - 2; ++i)
            err = std::max(err, std::abs(d4.at(i, j) - exact.at(i, j)));
    CHECK(err < 1e-12);
}

TEST_CASE("order-4 derivative of sin on dx = 0.01 is 1e-9 accurate") {
    Grid g(101, 5, 0.0, 0.0, 0.01, 0.01);
    ScalarField f = ScalarField::from_expr(g, Expr::parse("sin(x)")).sampled();
    ScalarField d = f.derivative(Axis::X, 4);
    double err = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            err = std::max(err, std::abs(d.at(i, j) - std::cos(g.x(i))));
    CHECK(err < 1e-9);
}

TEST_CASE("symbolic and order-4 stencil derivatives agree to O(h^4)") {
    Grid g = unit_grid(51);
    ScalarField f = ScalarField::from_expr(g, Expr::parse("exp(x)*sin(2*y) + x*y"));
    ScalarField exact = f.derivative(Axis::Y);
    ScalarField fd = f.sampled().derivative(Axis::Y, 4);
    double h = g.dy;
    CHECK((exact - fd).max_abs() < 50.0 * h * h * h * h);
}

TEST_CASE("grid too small for stencil") {
    Grid g(5, 5, 0, 0, 0.1, 0.1);
    ScalarField f = ScalarField::constant(g, 1.0).sampled();
    CHECK_NOTHROW(f.derivative(Axis::X, 4));  // 5 nodes suffice for a 5-point stencil
}

TEST_CASE("wedge bracket identities") {
    Grid g = small_grid();
    std::mt19937 rng(42);
    MatrixField wx = MatrixField::constant(g, random_matrix(rng));
    MatrixField wy = MatrixField::constant(g, random_matrix(rng));
    MatrixField ex = MatrixField::constant(g, random_matrix(rng));
    MatrixField ey = MatrixField::constant(g, random_matrix(rng));

    // [w ^ w] = 2 [w_x, w_y].
    MatrixField self = wedge_bracket_component(wx, wy, wx, wy);
    MatrixField twice = 2.0 * commutator(wx, wy);
    CHECK((self - twice).max_abs() < 1e-13);

    // Equal components commute with themselves: zero.
    MatrixField same = wedge_bracket_component(wx, wx, wx, wx);
    CHECK(same.max_abs() < 1e-14);

    // The bracket of one-forms is symmetric in its arguments.
    MatrixField ab = wedge_bracket_component(wx, wy, ex, ey);
    MatrixField ba = wedge_bracket_component(ex, ey, wx, wy);
    CHECK((ab - ba).max_abs() < 1e-13);

    // Bilinearity.
    double s = 1.75;
    MatrixField lhs = wedge_bracket_component(s * wx + ex, s * wy + ey, ex, ey);
    MatrixField rhs = s * wedge_bracket_component(wx, wy, ex, ey) +
                      wedge_bracket_component(ex, ey, ex, ey);
    CHECK((lhs - rhs).max_abs() < 1e-12);

    Grid g2(7, 7, 0, 0, 0.1, 0.1);
    MatrixField other = MatrixField::constant(g2, random_matrix(rng));
    CHECK_THROWS_AS(wedge_bracket_component(wx, wy, other, other), Error);
}

TEST_CASE("matrix field symbolic algebra") {
    Grid g = small_grid();
    MatrixField m(g);
    m.entry(0, 1) = ScalarField::from_expr(g, Expr::parse("x"));
    m.entry(1, 0) = ScalarField::from_expr(g, Expr::parse("y"));
    m.entry(2, 2) = ScalarField::constant(g, 1.0);
    m.entry(3, 3) = ScalarField::constant(g, 1.0);
    CHECK(m.expr_backed());
    MatrixField sq = m * m;
    CHECK(sq.expr_backed());
    CHECK(sq.at(3, 7)(0, 0) == doctest::Approx(g.x(3) * g.y(7)));

    // Symbolic derivative of the product.
    MatrixField d = sq.derivative(Axis::X);
    CHECK(d.at(3, 7)(0, 0) == doctest::Approx(g.y(7)));
}

TEST_CASE("adjugate inverse") {
    Grid g = small_grid();
    std::mt19937 rng(7);
    Mat4 a = random_matrix(rng) + 3.0 * Mat4::Identity();
    MatrixField m = MatrixField::constant(g, a);
    MatrixField inv = m.adjugate_inverse();
    CHECK((m * inv - MatrixField::constant(g, Mat4::Identity())).max_abs() < 1e-12);

    // Symbolic inverse of a varying unipotent matrix.
    MatrixField u = MatrixField::constant(g, Mat4::Identity());
    u.entry(0, 2) = ScalarField::from_expr(g, Expr::parse("x*y"));
    u.entry(1, 3) = ScalarField::from_expr(g, Expr::parse("sin(x)"));
    MatrixField uinv = u.adjugate_inverse();
    CHECK(uinv.expr_backed());
    CHECK((u * uinv - MatrixField::constant(g, Mat4::Identity())).max_abs() < 1e-13);
}

TEST_CASE("bicubic evaluation of grid fields") {
    Grid g = unit_grid(51);
    ScalarField f = ScalarField::from_expr(g, Expr::parse("sin(3*x)*cos(2*y)"));
    ScalarField s = f.sampled();
    double x = 0.437, y = 0.619;
    CHECK(s(x, y) == doctest::Approx(f(x, y)).epsilon(5e-6));

    // At the nodes, sampling agrees with the expression exactly.
    for (auto [i, j] : {std::pair{0, 0}, std::pair{17, 31}, std::pair{50, 50}})
        CHECK(s.at(i, j) == f.at(i, j));
}
