#include "mobiusflat/conserved.hpp"

#include "mobiusflat/centroaffine.hpp"

namespace mflat {

PolyConservedQuantity build_from_potential(const ScalarField& alpha, const WilczynskiData& w,
                                           int order) {
    const Grid& g = w.grid();
    require_same_grid(g, alpha.grid());
    ScalarField a = 2.0 * alpha.derivative(Axis::X, order);
    ScalarField b = 2.0 * alpha.derivative(Axis::Y, order);
    ScalarField c = (-2.0) * alpha.derivative(Axis::X, order).derivative(Axis::Y, order);
    ScalarField zero = ScalarField::zero(g);

    PolyConservedQuantity q;
    q.v0 = Vec4Field::from_components(
        g, {w.beta * w.gamma, zero, zero, ScalarField::constant(g, -2.0)});
    q.v1 = Vec4Field::from_components(g, {c, b, a, zero});
    q.v2 = Vec4Field::from_components(g, {1.0 + 0.5 * (a * b), zero, zero, zero});
    return q;
}

namespace {

Vec4Field cov_deriv(const Vec4Field& v, const MatrixField& omega_axis, Axis ax, int order) {
    return v.derivative(ax, order) + omega_axis * v;
}

}  // namespace

ConservationReport conservation_residual(const PolyConservedQuantity& q, const WilczynskiData& w,
                                         int order, const MatrixOneForm* chi_override,
                                         const MatrixOneForm* psi_override) {
    auto [D, N] = split_lie_quadric(w, order);
    ChiPsiTau cpt = canonical_chi_psi_tau(w);
    const MatrixOneForm& chi = chi_override ? *chi_override : cpt.chi;
    const MatrixOneForm& psi = psi_override ? *psi_override : cpt.psi;

    // The potential enters only through d alpha; recover it from the kernel
    // relations a = 2 alpha_x, b = 2 alpha_y carried by v1 = (c, b, a, 0).
    ScalarField alpha_x = 0.5 * q.v1.comp(2);
    ScalarField alpha_y = 0.5 * q.v1.comp(1);

    ConservationReport rep;
    auto assemble_axis = [&](Axis ax) {
        const MatrixField& Dm = (ax == Axis::X) ? D.x : D.y;
        const MatrixField& Nm = (ax == Axis::X) ? N.x : N.y;
        const MatrixField& Cm = (ax == Axis::X) ? chi.x : chi.y;
        const MatrixField& Pm = (ax == Axis::X) ? psi.x : psi.y;
        const ScalarField& da = (ax == Axis::X) ? alpha_x : alpha_y;

        Vec4Field Dv0 = cov_deriv(q.v0, Dm, ax, order);
        Vec4Field Dv1 = cov_deriv(q.v1, Dm, ax, order);
        Vec4Field Dv2 = cov_deriv(q.v2, Dm, ax, order);
        std::array<Vec4Field, 6> eq = {
            Dv0 - Cm * q.v0,
            Dv1 + Nm * q.v0 + da * q.v0 - Cm * q.v1 - Pm * q.v0,
            Dv2 + Nm * q.v1 + da * q.v1 + Cm * q.v0 - Cm * q.v2 - Pm * q.v1,
            Nm * q.v2 + da * q.v2 + Cm * q.v1 + Pm * q.v0 - Pm * q.v2,
            Cm * q.v2 + Pm * q.v1,
            Pm * q.v2};
        for (int k = 0; k < 6; ++k)
            rep.coefficients[k] = std::max(rep.coefficients[k], eq[k].max_abs(true));
    };
    assemble_axis(Axis::X);
    assemble_axis(Axis::Y);
    for (double c : rep.coefficients) rep.total = std::max(rep.total, c);
    return rep;
}

std::array<double, 5> theorem1_residuals(const ScalarField& alpha, const WilczynskiData& w,
                                         int order) {
    ScalarField ax = alpha.derivative(Axis::X, order);
    ScalarField ay = alpha.derivative(Axis::Y, order);
    ScalarField axx = ax.derivative(Axis::X, order);
    ScalarField ayy = ay.derivative(Axis::Y, order);

    ScalarField e1 = w.beta.derivative(Axis::Y, order) - 2.0 * axx;
    ScalarField e2 = w.gamma.derivative(Axis::X, order) - 2.0 * ayy;
    ScalarField e3 = w.V - 2.0 * (w.beta * ay + ax * ax);
    ScalarField e4 = w.W - 2.0 * (w.gamma * ax + ay * ay);
    ScalarField e5 = (w.beta * w.gamma - 4.0 * (ax * ay)) - 1.0;

    return {e1.max_abs(true), e2.max_abs(true), e3.max_abs(true), e4.max_abs(true),
            e5.max_abs(true)};
}

EquivalenceReport equivalence_check(const WilczynskiData& w, const ScalarField& alpha,
                                    const CentroAffineImmersion* immersion, int order) {
    EquivalenceReport rep;
    rep.theorem1 = theorem1_residuals(alpha, w, order);
    rep.conservation = conservation_residual(build_from_potential(alpha, w, order), w, order);
    if (immersion) {
        CentroAffineData data = decompose(*immersion, order);
        rep.max_gauss_curvature =
            gauss_curvature(data.g11, data.g12, data.g22, order).max_abs(true);
        rep.has_curvature_section = true;
    }
    return rep;
}

}  // namespace mflat
