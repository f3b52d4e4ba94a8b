#include "mobiusflat/centroaffine.hpp"

#include <cmath>
#include <limits>

namespace mflat {

CentroAffineData decompose(const CentroAffineImmersion& imm, int order) {
    const Grid& g = imm.grid();
    Vec3Field r = imm.r;
    Vec3Field ru = r.derivative(Axis::X, order);
    Vec3Field rv = r.derivative(Axis::Y, order);
    Vec3Field ruu = ru.derivative(Axis::X, order);
    Vec3Field ruv = ru.derivative(Axis::Y, order);
    Vec3Field rvv = rv.derivative(Axis::Y, order);
    Vec3Field ruuu = ruu.derivative(Axis::X, order);
    Vec3Field ruuv = ruu.derivative(Axis::Y, order);
    Vec3Field ruvv = ruv.derivative(Axis::Y, order);
    Vec3Field rvvv = rvv.derivative(Axis::Y, order);

    std::vector<double> g11(g.size()), g12(g.size()), g22(g.size()), trans(g.size());
    // Tangential coefficients of r_uu, r_uv, r_vv and the exact first
    // derivatives of the metric, obtained by differentiating the solves:
    // d(c) = M^-1 (d(rhs) - dM c).
    std::array<std::vector<double>, 6> gamma_t;
    for (auto& v : gamma_t) v.resize(g.size());
    std::array<std::vector<double>, 6> dmet;  // E_u, E_v, F_u, F_v, G_u, G_v
    for (auto& v : dmet) v.resize(g.size());

    double det_scale = 0.0;
    std::vector<Eigen::Matrix3d> frames(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            Eigen::Matrix3d M;
            M.col(0) = ru.at(i, j);
            M.col(1) = rv.at(i, j);
            M.col(2) = r.at(i, j);
            frames[g.index(i, j)] = M;
            double d = M.determinant();
            trans[g.index(i, j)] = d;
            det_scale = std::max(det_scale, std::abs(d));
        }
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            int idx = g.index(i, j);
            if (std::abs(trans[idx]) < 1e-10 * std::max(1.0, det_scale))
                throw Error("not-centro-affine", "det(r_u, r_v, r) ~ 0 at node (" +
                                                     std::to_string(i) + ", " +
                                                     std::to_string(j) + ")");
            Eigen::PartialPivLU<Eigen::Matrix3d> lu(frames[idx]);
            Eigen::Vector3d cuu = lu.solve(ruu.at(i, j));
            Eigen::Vector3d cuv = lu.solve(ruv.at(i, j));
            Eigen::Vector3d cvv = lu.solve(rvv.at(i, j));
            gamma_t[0][idx] = cuu[0];
            gamma_t[1][idx] = cuv[0];
            gamma_t[2][idx] = cvv[0];
            gamma_t[3][idx] = cuu[1];
            gamma_t[4][idx] = cuv[1];
            gamma_t[5][idx] = cvv[1];
            g11[idx] = cuu[2];
            g12[idx] = cuv[2];
            g22[idx] = cvv[2];

            Eigen::Matrix3d Mu, Mv;
            Mu.col(0) = ruu.at(i, j);
            Mu.col(1) = ruv.at(i, j);
            Mu.col(2) = ru.at(i, j);
            Mv.col(0) = ruv.at(i, j);
            Mv.col(1) = rvv.at(i, j);
            Mv.col(2) = rv.at(i, j);
            dmet[0][idx] = lu.solve(ruuu.at(i, j) - Mu * cuu)[2];  // E_u
            dmet[1][idx] = lu.solve(ruuv.at(i, j) - Mv * cuu)[2];  // E_v
            dmet[2][idx] = lu.solve(ruuv.at(i, j) - Mu * cuv)[2];  // F_u
            dmet[3][idx] = lu.solve(ruvv.at(i, j) - Mv * cuv)[2];  // F_v
            dmet[4][idx] = lu.solve(ruvv.at(i, j) - Mu * cvv)[2];  // G_u
            dmet[5][idx] = lu.solve(rvvv.at(i, j) - Mv * cvv)[2];  // G_v
        }

    CentroAffineData out;
    out.g11 = ScalarField::from_values(g, std::move(g11));
    out.g12 = ScalarField::from_values(g, std::move(g12));
    out.g22 = ScalarField::from_values(g, std::move(g22));
    out.transversality = ScalarField::from_values(g, std::move(trans));

    // Levi-Civita christoffels of the induced metric, from the exact metric
    // derivatives above.
    ScalarField E = out.g11, F = out.g12, G = out.g22;
    ScalarField Eu = ScalarField::from_values(g, std::move(dmet[0]));
    ScalarField Ev = ScalarField::from_values(g, std::move(dmet[1]));
    ScalarField Fu = ScalarField::from_values(g, std::move(dmet[2]));
    ScalarField Fv = ScalarField::from_values(g, std::move(dmet[3]));
    ScalarField Gu = ScalarField::from_values(g, std::move(dmet[4]));
    ScalarField Gv = ScalarField::from_values(g, std::move(dmet[5]));
    ScalarField det = E * G - F * F;
    ScalarField i11 = G / det, i12 = (-1.0) * (F / det), i22 = E / det;

    // First-kind symbols: [ij,k] = (d_i g_jk + d_j g_ik - d_k g_ij)/2.
    ScalarField s111 = 0.5 * Eu;
    ScalarField s112 = Fu - 0.5 * Ev;
    ScalarField s121 = 0.5 * Ev;
    ScalarField s122 = 0.5 * Gu;
    ScalarField s221 = Fv - 0.5 * Gu;
    ScalarField s222 = 0.5 * Gv;

    auto up = [&](const ScalarField& k1, const ScalarField& k2, const ScalarField& w1,
                  const ScalarField& w2) { return w1 * k1 + w2 * k2; };
    ScalarField lc1_11 = up(s111, s112, i11, i12);
    ScalarField lc1_12 = up(s121, s122, i11, i12);
    ScalarField lc1_22 = up(s221, s222, i11, i12);
    ScalarField lc2_11 = up(s111, s112, i12, i22);
    ScalarField lc2_12 = up(s121, s122, i12, i22);
    ScalarField lc2_22 = up(s221, s222, i12, i22);

    out.h[0] = ScalarField::from_values(g, std::move(gamma_t[0])) - lc1_11;
    out.h[1] = ScalarField::from_values(g, std::move(gamma_t[1])) - lc1_12;
    out.h[2] = ScalarField::from_values(g, std::move(gamma_t[2])) - lc1_22;
    out.h[3] = ScalarField::from_values(g, std::move(gamma_t[3])) - lc2_11;
    out.h[4] = ScalarField::from_values(g, std::move(gamma_t[4])) - lc2_12;
    out.h[5] = ScalarField::from_values(g, std::move(gamma_t[5])) - lc2_22;

    // Chebyshev covector T_i = h^k_{ik}.
    out.T1 = out.h[0] + out.h[4];
    out.T2 = out.h[1] + out.h[5];
    return out;
}

ScalarField gauss_curvature(const ScalarField& g11, const ScalarField& g12,
                            const ScalarField& g22, int order) {
    ScalarField E = g11, F = g12, G = g22;
    ScalarField Eu = E.derivative(Axis::X, order), Ev = E.derivative(Axis::Y, order);
    ScalarField Fu = F.derivative(Axis::X, order), Fv = F.derivative(Axis::Y, order);
    ScalarField Gu = G.derivative(Axis::X, order), Gv = G.derivative(Axis::Y, order);
    ScalarField Evv = Ev.derivative(Axis::Y, order);
    ScalarField Guu = Gu.derivative(Axis::X, order);
    ScalarField Fuv = Fu.derivative(Axis::Y, order);

    // Brioschi: K = (det M1 - det M2) / (EG - F^2)^2.
    ScalarField a11 = (-0.5) * Evv + Fuv - 0.5 * Guu;
    ScalarField a12 = 0.5 * Eu;
    ScalarField a13 = Fu - 0.5 * Ev;
    ScalarField a21 = Fv - 0.5 * Gu;
    ScalarField b11 = ScalarField::zero(E.grid());
    ScalarField b12 = 0.5 * Ev;
    ScalarField b13 = 0.5 * Gu;

    auto det3 = [](const ScalarField& m11, const ScalarField& m12, const ScalarField& m13,
                   const ScalarField& m21, const ScalarField& m22, const ScalarField& m23,
                   const ScalarField& m31, const ScalarField& m32, const ScalarField& m33) {
        return m11 * (m22 * m33 - m23 * m32) - m12 * (m21 * m33 - m23 * m31) +
               m13 * (m21 * m32 - m22 * m31);
    };
    ScalarField det_m1 = det3(a11, a12, a13, a21, E, F, 0.5 * Gv, F, G);
    ScalarField det_m2 = det3(b11, b12, b13, b12, E, F, b13, F, G);
    ScalarField den = E * G - F * F;
    return (det_m1 - det_m2) / (den * den);
}

LoweredCubic lower_cubic(const CentroAffineData& d) {
    LoweredCubic out;
    out.h111 = d.g11 * d.h[0] + d.g12 * d.h[3];
    out.h112 = d.g12 * d.h[0] + d.g22 * d.h[3];  // h(du,du)(dv)-slot: g_2l h^l_11
    out.h122 = d.g12 * d.h[1] + d.g22 * d.h[4];  // g_2l h^l_12
    out.h222 = d.g12 * d.h[2] + d.g22 * d.h[5];
    out.h121 = d.g11 * d.h[1] + d.g12 * d.h[4];  // g_1l h^l_12, must equal h112
    out.h221 = d.g11 * d.h[2] + d.g12 * d.h[5];  // g_1l h^l_22, must equal h122
    return out;
}

namespace {

struct AdaptedPieces {
    ConnectionForm D;   // metric part of the trivial connection
    ConnectionForm N;   // g-symmetric part
    ConnectionForm chi; // grade +1 part of D in the adapted frame (= -beta_hat)
};

}  // namespace

AdaptedConservedReport adapted_conserved_check(const Vec4Field& R, const Vec4& p,
                                               AdaptedRoute route, int order,
                                               const Vec4Field* quantity_r_override) {
    const Grid& g = R.grid();
    Vec4Field Ru = R.derivative(Axis::X, order);
    Vec4Field Rv = R.derivative(Axis::Y, order);
    Vec4Field Ruu = Ru.derivative(Axis::X, order);
    Vec4Field Ruv = Ru.derivative(Axis::Y, order);
    Vec4Field Rvv = Rv.derivative(Axis::Y, order);
    Vec4Field pf = Vec4Field::constant(g, p);
    Vec4Field rvec = R - pf;
    Vec4Field Rhat = pf - rvec;  // 2p - R

    // Induced centro-affine metric from ddR = (tangential) + g_ij (R - p);
    // the ambient Gram matrix is then pinned by g(r,r) = -g(p,p) = 1,
    // g|_U = -ghat and the orthogonality of the Weyl splitting.
    std::vector<Mat4> G_values(g.size());
    double ghat_det_min = std::numeric_limits<double>::infinity();
    double ghat_det_max = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            Mat4 B;
            B.col(0) = Ru.at(i, j);
            B.col(1) = Rv.at(i, j);
            B.col(2) = rvec.at(i, j);
            B.col(3) = p;
            if (std::abs(B.determinant()) < 1e-12)
                throw Error("not-centro-affine", "adapted frame degenerate at node (" +
                                                     std::to_string(i) + ", " +
                                                     std::to_string(j) + ")");
            Eigen::PartialPivLU<Mat4> lu(B);
            double h11 = lu.solve(Ruu.at(i, j))[2];
            double h12 = lu.solve(Ruv.at(i, j))[2];
            double h22 = lu.solve(Rvv.at(i, j))[2];
            double det_ghat = h11 * h22 - h12 * h12;
            ghat_det_min = std::min(ghat_det_min, det_ghat);
            ghat_det_max = std::max(ghat_det_max, det_ghat);

            Mat4 Gf = Mat4::Zero();
            Gf(0, 0) = -h11;
            Gf(0, 1) = Gf(1, 0) = -h12;
            Gf(1, 1) = -h22;
            Gf(2, 2) = 1.0;
            Gf(3, 3) = -1.0;
            Mat4 Binv = B.inverse();
            G_values[g.index(i, j)] = Binv.transpose() * Gf * Binv;
        }
    if (route == AdaptedRoute::WilczynskiContext && ghat_det_max >= 0.0)
        throw Error("elliptic-metric",
                    "centro-affine metric is not hyperbolic (no real asymptotic coordinates)");

    MetricField G{MatrixField::from_values(g, G_values)};
    ConnectionForm trivial{MatrixField(g), MatrixField(g)};  // zero in the standard basis
    auto [D, N] = metric_split(trivial, G, order);

    // chi = -beta_hat: grade +1 part of D in the moving frame (R, Ru, Rv, Rhat).
    MatrixField T(g);
    for (int r = 0; r < 4; ++r) {
        T.entry(r, 0) = R.comp(r);
        T.entry(r, 1) = Ru.comp(r);
        T.entry(r, 2) = Rv.comp(r);
        T.entry(r, 3) = Rhat.comp(r);
    }
    Vec4Field dT_cols_x[4] = {Ru, Ruu, Ruv, (-1.0) * Ru};
    Vec4Field dT_cols_y[4] = {Rv, Ruv, Rvv, (-1.0) * Rv};
    auto chi_axis = [&](const MatrixField& Dm, Vec4Field dT_cols[4]) {
        std::vector<Mat4> chi_vals(g.size());
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                Mat4 Tm = T.at(i, j);
                Mat4 dT;
                for (int c = 0; c < 4; ++c) dT.col(c) = dT_cols[c].at(i, j);
                Mat4 Om = Tm.inverse() * (Dm.at(i, j) * Tm + dT);
                Mat4 chi_frame = Mat4::Zero();
                chi_frame(0, 1) = Om(0, 1);  // Lambda-row from U-columns
                chi_frame(0, 2) = Om(0, 2);
                chi_frame(1, 3) = Om(1, 3);  // U-rows from Lambda_hat-column
                chi_frame(2, 3) = Om(2, 3);
                chi_vals[g.index(i, j)] = Tm * chi_frame * Tm.inverse();
            }
        return MatrixField::from_values(g, chi_vals);
    };
    ConnectionForm chi{chi_axis(D.x, dT_cols_x), chi_axis(D.y, dT_cols_y)};

    const Vec4Field& Rq = quantity_r_override ? *quantity_r_override : R;
    AdaptedConservedReport rep;
    auto eval_axis = [&](Axis ax) {
        const MatrixField& Dm = (ax == Axis::X) ? D.x : D.y;
        const MatrixField& Nm = (ax == Axis::X) ? N.x : N.y;
        const MatrixField& Cm = (ax == Axis::X) ? chi.x : chi.y;
        Vec4Field DRhat = Rhat.derivative(ax, order) + Dm * Rhat;
        Vec4Field DRq = Rq.derivative(ax, order) + Dm * Rq;
        std::array<Vec4Field, 5> coeff = {
            DRhat - Cm * Rhat,                 // t^0
            Nm * Rhat,                         // t^1
            DRq + Cm * Rhat - Cm * Rq,         // t^2
            Nm * Rq,                           // t^3
            Cm * Rq};                          // t^4
        for (int k = 0; k < 5; ++k)
            rep.coefficients[k] = std::max(rep.coefficients[k], coeff[k].max_abs(true));
    };
    eval_axis(Axis::X);
    eval_axis(Axis::Y);
    for (double c : rep.coefficients) rep.total = std::max(rep.total, c);
    return rep;
}

AdaptedConservedReport adapted_conserved_check(const CentroAffineImmersion& imm,
                                               AdaptedRoute route, int order) {
    const Grid& g = imm.grid();
    Vec4Field R = Vec4Field::from_components(
        g, {imm.r.comp(0), imm.r.comp(1), imm.r.comp(2), ScalarField::constant(g, 1.0)});
    return adapted_conserved_check(R, Vec4(0, 0, 0, 1), route, order);
}

}  // namespace mflat
