#include <doctest.h>

#include <random>

#include "mobiusflat/centroaffine.hpp"
#include "test_helpers.hpp"

using namespace mflat;
using namespace mflat::testing;

namespace {

CentroAffineImmersion expr_immersion(const Grid& g, const char* r1, const char* r2,
                                     const char* r3) {
    return CentroAffineImmersion{Vec3Field::from_components(
        g, {ScalarField::from_expr(g, Expr::parse(r1)),
            ScalarField::from_expr(g, Expr::parse(r2)),
            ScalarField::from_expr(g, Expr::parse(r3))})};
}

CentroAffineImmersion tzitzeica(const Grid& g, double c = 1.0) {
    std::string third = std::to_string(c) + " * exp(-x - y)";
    return expr_immersion(g, "exp(x)", "exp(y)", third.c_str());
}

}  // namespace

TEST_CASE("decompose on the Tzitzeica surface") {
    Grid g = small_grid();
    CentroAffineData d = decompose(tzitzeica(g));

    // Constant metric (2/3, 1/3, 2/3).
    CHECK((d.g11 - ScalarField::constant(g, 2.0 / 3.0)).max_abs() < 1e-12);
    CHECK((d.g12 - ScalarField::constant(g, 1.0 / 3.0)).max_abs() < 1e-12);
    CHECK((d.g22 - ScalarField::constant(g, 2.0 / 3.0)).max_abs() < 1e-12);

    // r_uu tangential coefficients (1/3, -2/3).
    CHECK(d.h[0].at(5, 5) == doctest::Approx(1.0 / 3.0));   // constant metric: h = Gamma~
    CHECK(d.h[3].at(5, 5) == doctest::Approx(-2.0 / 3.0));

    // Proper affine sphere: Chebyshev covector vanishes.
    CHECK(d.T1.max_abs(true) < 1e-11);
    CHECK(d.T2.max_abs(true) < 1e-11);

    // Flat metric.
    CHECK(gauss_curvature(d.g11, d.g12, d.g22).max_abs(true) < 1e-8);
}

TEST_CASE("Tzitzeica family: constant metric and zero curvature for every scale") {
    Grid g = small_grid();
    for (double c : {0.5, 1.0, 2.5}) {
        CentroAffineData d = decompose(tzitzeica(g, c));
        CHECK((d.g11 - ScalarField::constant(g, d.g11.at(3, 3))).max_abs() < 1e-11);
        CHECK((d.g22 - ScalarField::constant(g, d.g22.at(3, 3))).max_abs() < 1e-11);
        CHECK(gauss_curvature(d.g11, d.g12, d.g22).max_abs(true) < 1e-8);
    }
}

TEST_CASE("decompose on a sphere patch") {
    // Unit sphere about the origin: r_ij . r = -|r_i|^2, so the induced
    // centro-affine metric is the negative of the round metric and its
    // Gaussian curvature is -1.
    Grid g(21, 21, 0.6, 0.1, 0.04, 0.04);  // away from the poles
    CentroAffineImmersion sphere =
        expr_immersion(g, "sin(x)*cos(y)", "sin(x)*sin(y)", "cos(x)");
    CentroAffineData d = decompose(sphere);

    for (int j = 2; j < g.ny - 2; j += 5)
        for (int i = 2; i < g.nx - 2; i += 5) {
            double su = std::sin(g.x(i));
            CHECK(d.g11.at(i, j) == doctest::Approx(-1.0).epsilon(1e-9));
            CHECK(d.g12.at(i, j) == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(d.g22.at(i, j) == doctest::Approx(-su * su).epsilon(1e-9));
        }

    // Closed-form route (exact derivatives): K = -1 to near round-off.
    ScalarField K_exact = gauss_curvature(
        ScalarField::constant(g, -1.0), ScalarField::zero(g),
        ScalarField::from_expr(g, Expr::parse("-sin(x)^2")));
    CHECK((K_exact + ScalarField::constant(g, 1.0)).max_abs(true) < 1e-10);

    // Numeric route through the solved metric grids: finite-difference level.
    ScalarField K = gauss_curvature(d.g11, d.g12, d.g22);
    CHECK((K - ScalarField::constant(g, -1.0)).max_abs(true) < 1e-3);
}

TEST_CASE("gauss_curvature oracle on closed-form metrics") {
    SUBCASE("constant metric is flat") {
        Grid g = small_grid();
        ScalarField K = gauss_curvature(ScalarField::constant(g, 2.0),
                                        ScalarField::constant(g, 0.5),
                                        ScalarField::constant(g, 1.0));
        CHECK(K.max_abs(true) < 1e-12);
    }

    SUBCASE("round metric has curvature 1") {
        Grid g(101, 101, 0.6, 0.0, 0.01, 0.01);
        ScalarField g11 = ScalarField::constant(g, 1.0);
        ScalarField g12 = ScalarField::zero(g);
        ScalarField g22 = ScalarField::from_expr(g, Expr::parse("sin(x)^2"));
        ScalarField K = gauss_curvature(g11, g12, g22);
        CHECK((K - ScalarField::constant(g, 1.0)).max_abs(true) < 1e-6);

        // Same result through sampled fields and finite differences.
        ScalarField Kfd = gauss_curvature(g11.sampled(), g12.sampled(), g22.sampled());
        CHECK((Kfd - ScalarField::constant(g, 1.0)).max_abs(true) < 1e-6);
    }

    SUBCASE("hyperbolic metric has curvature -1") {
        Grid g(51, 51, 0.5, 0.0, 0.02, 0.02);
        ScalarField K = gauss_curvature(ScalarField::constant(g, 1.0), ScalarField::zero(g),
                                        ScalarField::from_expr(g, Expr::parse("sinh(x)^2")));
        CHECK((K + ScalarField::constant(g, 1.0)).max_abs(true) < 1e-9);
    }
}

TEST_CASE("Codazzi: lowered cubic form is totally symmetric") {
    // r = (e^u, e^v, e^{c1 u + c2 v}) is transversal whenever c1 + c2 != 1.
    Grid g = small_grid();
    for (const CentroAffineImmersion& imm :
         {tzitzeica(g), expr_immersion(g, "exp(x)", "exp(y)", "exp(-2*x + y)"),
          expr_immersion(g, "exp(x)", "exp(y)", "exp(x + y)")}) {
        CentroAffineData d = decompose(imm);
        LoweredCubic c = lower_cubic(d);
        double scale = std::max(1.0, std::max(c.h111.max_abs(true), c.h222.max_abs(true)));
        CHECK((c.h112 - c.h121).max_abs(true) / scale < 1e-9);
        CHECK((c.h122 - c.h221).max_abs(true) / scale < 1e-9);
    }
}

TEST_CASE("centro-affine metric is invariant under unimodular maps") {
    Grid g = small_grid();
    CentroAffineImmersion imm = expr_immersion(g, "exp(x)", "exp(y)", "exp(-2*x + y)");
    CentroAffineData base = decompose(imm);

    // A volume-preserving linear map of R^3.
    Eigen::Matrix3d A;
    A << 1, 2, 0, 0, 1, -1, 1, 0, 1;
    A /= std::cbrt(A.determinant());
    std::array<ScalarField, 3> mapped;
    for (int r = 0; r < 3; ++r) {
        ScalarField acc = A(r, 0) * imm.r.comp(0);
        for (int k = 1; k < 3; ++k) acc = acc + A(r, k) * imm.r.comp(k);
        mapped[r] = acc;
    }
    CentroAffineData moved = decompose(CentroAffineImmersion{
        Vec3Field::from_components(g, mapped)});
    CHECK((base.g11 - moved.g11).max_abs(true) < 1e-11);
    CHECK((base.g12 - moved.g12).max_abs(true) < 1e-11);
    CHECK((base.g22 - moved.g22).max_abs(true) < 1e-11);
}

TEST_CASE("transversality failure is reported") {
    Grid g = small_grid();
    // A plane through the origin: r is never transverse to its tangent plane.
    CentroAffineImmersion flat = expr_immersion(g, "1 + x", "1 + y", "2 + x + y");
    CHECK_THROWS_AS(decompose(flat), Error);
    try {
        decompose(flat);
    } catch (const Error& e) {
        CHECK(e.code() == "not-centro-affine");
    }
}

TEST_CASE("adapted conserved quantity checks") {
    SUBCASE("sphere through the standard chart: structural conservation") {
        Grid g(21, 21, 0.6, 0.1, 0.04, 0.04);
        CentroAffineImmersion sphere =
            expr_immersion(g, "sin(x)*cos(y)", "sin(x)*sin(y)", "cos(x)");
        AdaptedConservedReport rep = adapted_conserved_check(sphere);
        CHECK(rep.total < 1e-8);

        // The sphere metric is definite: the asymptotic-coordinate route
        // must refuse it.
        CHECK_THROWS_AS(adapted_conserved_check(sphere, AdaptedRoute::WilczynskiContext), Error);
        try {
            adapted_conserved_check(sphere, AdaptedRoute::WilczynskiContext);
        } catch (const Error& e) {
            CHECK(e.code() == "elliptic-metric");
        }
    }

    SUBCASE("E2 chart lift is conserved") {
        // Default-resolution grid: the split of the adapted metric uses
        // finite differences of the assembled Gram matrix, so the residual
        // scales with h^4.
        Grid g = unit_grid();
        Vec4Field sigma = e2_fundamental_lift(g);
        Vec4Field sigma_xy = sigma.derivative(Axis::X).derivative(Axis::Y);
        Vec4Field p = sigma - sigma_xy;
        Vec4 p0 = p.at(3, 3);
        AdaptedConservedReport rep = adapted_conserved_check(sigma, p0);
        CHECK(rep.total < 1e-8);

        // Hyperbolic metric: the Wilczynski-context route accepts it.
        CHECK_NOTHROW(adapted_conserved_check(sigma, p0, AdaptedRoute::WilczynskiContext));
    }

    SUBCASE("perturbed quantity is detected") {
        Grid g = small_grid();
        Vec4Field sigma = e2_fundamental_lift(g);
        Vec4Field sigma_xy = sigma.derivative(Axis::X).derivative(Axis::Y);
        Vec4 p0 = (sigma - sigma_xy).at(3, 3);
        Vec4Field perturbed = sigma + 0.1 * sigma.derivative(Axis::X);
        AdaptedConservedReport rep =
            adapted_conserved_check(sigma, p0, AdaptedRoute::DirectLift, 4, &perturbed);
        CHECK(rep.total > 1e-3);
    }
}
