#include "mobiusflat/bgg.hpp"

namespace mflat {

namespace {

MatrixField eps1_field(const Grid& g) { return MatrixField::constant(g, epsilon1_matrix()); }
MatrixField eps2_field(const Grid& g) { return MatrixField::constant(g, epsilon2_matrix()); }

}  // namespace

MatrixOneForm boundary(const MatrixField& two_form) {
    const Grid& g = two_form.grid();
    MatrixField e1c = commutator(eps2_field(g), -two_form);  // alpha_{e2,e1} = -alpha_{e1,e2}
    MatrixField e2c = commutator(eps1_field(g), two_form);
    return {e1c, e2c};
}

MatrixField boundary(const MatrixOneForm& one_form) {
    const Grid& g = one_form.grid();
    return commutator(eps1_field(g), one_form.x) + commutator(eps2_field(g), one_form.y);
}

MatrixOneForm quabla(const MatrixOneForm& eta, const ConnectionForm& D, int order) {
    MatrixOneForm d_of_bdry = covariant_derivative(boundary(eta), D, order);
    MatrixOneForm bdry_of_d = boundary(exterior_covariant_derivative(eta, D, order));
    return {d_of_bdry.x + bdry_of_d.x, d_of_bdry.y + bdry_of_d.y};
}

MatrixOneForm solve_psi(const WilczynskiData& w, const QuadraticDifferential& q, double tol,
                        int order) {
    const Grid& g = w.grid();
    MatrixField psi_x(g), psi_y(g);
    psi_x.entry(0, 3) = w.beta * q.b;
    psi_y.entry(0, 3) = w.gamma * q.a;
    MatrixOneForm psi{psi_x, psi_y};

    auto [D, N] = split_lie_quadric(w, order);
    MatrixField qx(g), qy(g);
    qx = q.a * eps1_field(g);
    qy = q.b * eps2_field(g);
    MatrixField nwq = wedge_bracket_component(N.x, N.y, qx, qy);
    MatrixOneForm rhs = boundary(nwq);
    MatrixOneForm check = quabla(psi, D, order);
    double residual = std::max((check.x + rhs.x).max_abs(true), (check.y + rhs.y).max_abs(true));
    if (residual > tol)
        throw Error("quabla-mismatch",
                    "quabla verification residual " + std::to_string(residual));
    return psi;
}

MatrixOneForm normal_correction(const WilczynskiData& w) {
    const Grid& g = w.grid();
    ScalarField half_bg = 0.5 * (w.beta * w.gamma);
    return {half_bg * eps2_field(g), half_bg * eps1_field(g)};
}

std::pair<ScalarField, ScalarField> cotton_york_residual(const WilczynskiData& w,
                                                         const QuadraticDifferential& q,
                                                         int order) {
    ScalarField a_y = q.a.derivative(Axis::Y, order);
    ScalarField b_x = q.b.derivative(Axis::X, order);
    ScalarField beta_x = w.beta.derivative(Axis::X, order);
    ScalarField beta_y = w.beta.derivative(Axis::Y, order);
    ScalarField gamma_x = w.gamma.derivative(Axis::X, order);
    ScalarField gamma_y = w.gamma.derivative(Axis::Y, order);
    ScalarField first = 2.0 * a_y - 2.0 * (w.beta * gamma_x) - beta_x * w.gamma;
    ScalarField second = 2.0 * b_x - 2.0 * (beta_y * w.gamma) - w.beta * gamma_y;
    return {first, second};
}

ScalarField cup_residual(const WilczynskiData& w, const QuadraticDifferential& q, int order) {
    const Grid& g = w.grid();
    MatrixField psi_x(g), psi_y(g);
    psi_x.entry(0, 3) = w.beta * q.b;
    psi_y.entry(0, 3) = w.gamma * q.a;
    auto [D, N] = split_lie_quadric(w, order);
    MatrixField dpsi = exterior_covariant_derivative({psi_x, psi_y}, D, order);
    MatrixField qx = q.a * eps1_field(g);
    MatrixField qy = q.b * eps2_field(g);
    MatrixField nwq = wedge_bracket_component(N.x, N.y, qx, qy);
    return (dpsi + nwq).entry(0, 3);
}

}  // namespace mflat
