#pragma once

#include "mobiusflat/wilczynski.hpp"

namespace mflat {

/// Trace-free quadratic differential q = a eps1 (x) eps1 + b eps2 (x) eps2.
struct QuadraticDifferential {
    ScalarField a, b;

    static QuadraticDifferential from_data(const WilczynskiData& w) {
        if (!w.a || !w.b) throw Error("missing-ab", "data carries no (a, b)");
        return {*w.a, *w.b};
    }
};

/// Boundary operator on Lie-algebra-valued two-forms (value = e1^e2 component):
/// (d_bdry alpha)_{e1} = [eps2, alpha_{e2,e1}], (d_bdry alpha)_{e2} = [eps1, alpha_{e1,e2}].
MatrixOneForm boundary(const MatrixField& two_form);

/// Boundary on one-forms: [eps1, eta_x] + [eps2, eta_y].
MatrixField boundary(const MatrixOneForm& one_form);

/// Quabla on one-forms against the connection D: d^D(bdry eta) + bdry(d^D eta).
MatrixOneForm quabla(const MatrixOneForm& eta, const ConnectionForm& D, int order = 4);

/// psi = -quabla^{-1} bdry [N wedge q], realized in closed form as the
/// (1,4)-slot one-form  beta b dx + gamma a dy. The quabla contract (applying
/// quabla reproduces -bdry[N wedge q]) is verified; Error("quabla-mismatch")
/// if it fails beyond tol.
MatrixOneForm solve_psi(const WilczynskiData& w, const QuadraticDifferential& q,
                        double tol = 1e-9, int order = 4);

/// Normal correction Q with Q_{e1} = (beta gamma/2) eps2, Q_{e2} = (beta gamma/2) eps1.
/// The conformal structure pairs the asymptotic directions, so the eps-slots
/// swap relative to the coordinate labels. D - Q satisfies bdry R^{D-Q} = 0.
MatrixOneForm normal_correction(const WilczynskiData& w);

/// Scalar residuals of d^D q = Cotton-York in this gauge:
/// (2 a_y - 2 beta gamma_x - beta_x gamma,  2 b_x - 2 beta_y gamma - beta gamma_y).
std::pair<ScalarField, ScalarField> cotton_york_residual(const WilczynskiData& w,
                                                         const QuadraticDifferential& q,
                                                         int order = 4);

/// (1,4)-entry of d^D psi + [N wedge q]; its vanishing is the cup-product
/// condition q cup C = 0 in coordinates.
ScalarField cup_residual(const WilczynskiData& w, const QuadraticDifferential& q, int order = 4);

}  // namespace mflat
