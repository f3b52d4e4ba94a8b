#include "mobiusflat/wilczynski.hpp"

#include <cmath>

namespace mflat {

WilczynskiData WilczynskiData::from_exprs(const Grid& g, const Expr& beta, const Expr& gamma,
                                          const Expr& V, const Expr& W) {
    WilczynskiData w;
    w.beta = ScalarField::from_expr(g, beta);
    w.gamma = ScalarField::from_expr(g, gamma);
    w.V = ScalarField::from_expr(g, V);
    w.W = ScalarField::from_expr(g, W);
    return w;
}

WilczynskiData WilczynskiData::constants(const Grid& g, double beta, double gamma, double V,
                                         double W) {
    return from_exprs(g, Expr::constant(beta), Expr::constant(gamma), Expr::constant(V),
                      Expr::constant(W));
}

Vec4Field frame_column(const SurfaceFrame& f, int k) {
    const Grid& g = f.F.grid();
    return Vec4Field::from_components(
        g, {f.F.entry(0, k), f.F.entry(1, k), f.F.entry(2, k), f.F.entry(3, k)});
}

Vec4Field hat_column(const SurfaceFrame& f, const WilczynskiData& w) {
    ScalarField half_bg = 0.5 * (w.beta * w.gamma);
    Vec4Field sigma = frame_column(f, 0);
    Vec4Field sigma_xy = frame_column(f, 3);
    return sigma_xy - half_bg * sigma;
}

Mat4 epsilon1_matrix() {
    Mat4 m = Mat4::Zero();
    m(0, 1) = 1.0;
    m(2, 3) = 1.0;
    return m;
}

Mat4 epsilon2_matrix() {
    Mat4 m = Mat4::Zero();
    m(0, 2) = 1.0;
    m(1, 3) = 1.0;
    return m;
}

Mat4 e14_matrix() {
    Mat4 m = Mat4::Zero();
    m(0, 3) = 1.0;
    return m;
}

ConnectionForm build_connection(const WilczynskiData& w, int order) {
    const Grid& g = w.grid();
    ScalarField beta_y = w.beta.derivative(Axis::Y, order);
    ScalarField beta_yy = beta_y.derivative(Axis::Y, order);
    ScalarField gamma_x = w.gamma.derivative(Axis::X, order);
    ScalarField gamma_xx = gamma_x.derivative(Axis::X, order);
    ScalarField V_y = w.V.derivative(Axis::Y, order);
    ScalarField W_x = w.W.derivative(Axis::X, order);
    ScalarField bg = w.beta * w.gamma;
    ScalarField zero = ScalarField::zero(g);
    ScalarField one = ScalarField::constant(g, 1.0);

    // Row-convention matrix A_x of d(psi)_x = A_x psi; stored transposed.
    MatrixField Ax(g);
    Ax.entry(0, 1) = one;
    Ax.entry(1, 0) = 0.5 * (w.V - beta_y);
    Ax.entry(1, 2) = w.beta;
    Ax.entry(2, 3) = one;
    Ax.entry(3, 0) = 0.5 * (w.beta * w.W - w.beta * gamma_x + V_y - beta_yy);
    Ax.entry(3, 1) = bg;
    Ax.entry(3, 2) = 0.5 * (w.V + beta_y);

    MatrixField Ay(g);
    Ay.entry(0, 2) = one;
    Ay.entry(1, 3) = one;
    Ay.entry(2, 0) = 0.5 * (w.W - gamma_x);
    Ay.entry(2, 1) = w.gamma;
    Ay.entry(3, 0) = 0.5 * (w.gamma * w.V - w.gamma * beta_y + W_x - gamma_xx);
    Ay.entry(3, 1) = 0.5 * (w.W + gamma_x);
    Ay.entry(3, 2) = bg;

    return {Ax.transpose(), Ay.transpose()};
}

double compatibility_residual(const WilczynskiData& w, int order) {
    return curvature(build_connection(w, order), order).max_abs(true);
}

MetricField lie_quadric_metric(const WilczynskiData& w) {
    const Grid& g = w.grid();
    MatrixField G(g);
    ScalarField one = ScalarField::constant(g, 1.0);
    G.entry(0, 3) = one;
    G.entry(3, 0) = one;
    G.entry(1, 2) = -one;
    G.entry(2, 1) = -one;
    G.entry(3, 3) = w.beta * w.gamma;
    return MetricField{G};
}

std::pair<ConnectionForm, ConnectionForm> split_lie_quadric(const WilczynskiData& w, int order) {
    return metric_split(build_connection(w, order), lie_quadric_metric(w), order);
}

ConnectionForm lie_quadric_normal_closed_form(const WilczynskiData& w, int order) {
    const Grid& g = w.grid();
    ScalarField beta_x = w.beta.derivative(Axis::X, order);
    ScalarField beta_y = w.beta.derivative(Axis::Y, order);
    ScalarField beta_yy = beta_y.derivative(Axis::Y, order);
    ScalarField gamma_x = w.gamma.derivative(Axis::X, order);
    ScalarField gamma_y = w.gamma.derivative(Axis::Y, order);
    ScalarField gamma_xx = gamma_x.derivative(Axis::X, order);
    ScalarField V_y = w.V.derivative(Axis::Y, order);
    ScalarField W_x = w.W.derivative(Axis::X, order);

    MatrixField Nx(g);
    Nx.entry(0, 1) = -0.5 * beta_y;
    Nx.entry(0, 3) =
        0.5 * (V_y - beta_yy + w.beta * w.W - 2.0 * (w.beta * gamma_x) - w.gamma * beta_x);
    Nx.entry(2, 1) = w.beta;
    Nx.entry(2, 3) = 0.5 * beta_y;

    MatrixField Ny(g);
    Ny.entry(0, 2) = -0.5 * gamma_x;
    Ny.entry(0, 3) =
        0.5 * (W_x - gamma_xx + w.gamma * w.V - 2.0 * (w.gamma * beta_y) - w.beta * gamma_y);
    Ny.entry(1, 2) = w.gamma;
    Ny.entry(1, 3) = 0.5 * gamma_x;

    return {Nx, Ny};
}

ChiPsiTau canonical_chi_psi_tau(const WilczynskiData& w) {
    const Grid& g = w.grid();
    ScalarField bg = w.beta * w.gamma;

    MatrixField chi_x(g);
    chi_x.entry(0, 1) = 0.5 * w.V;
    chi_x.entry(0, 2) = 0.5 * bg;
    chi_x.entry(1, 3) = 0.5 * bg;
    chi_x.entry(2, 3) = 0.5 * w.V;

    MatrixField chi_y(g);
    chi_y.entry(0, 1) = 0.5 * bg;
    chi_y.entry(0, 2) = 0.5 * w.W;
    chi_y.entry(1, 3) = 0.5 * w.W;
    chi_y.entry(2, 3) = 0.5 * bg;

    MatrixField psi_x(g);
    psi_x.entry(0, 3) = 0.5 * (w.beta * w.W);
    MatrixField psi_y(g);
    psi_y.entry(0, 3) = 0.5 * (w.gamma * w.V);

    MatrixField tau(g);
    tau.entry(0, 3) = 0.5 * bg;

    return {MatrixOneForm{chi_x, chi_y}, MatrixOneForm{psi_x, psi_y}, tau};
}

ChiPsiTau chi_psi_tau_from_ab(const WilczynskiData& w) {
    if (!w.a || !w.b) throw Error("missing-ab", "quadratic differential components not set");
    const Grid& g = w.grid();
    ScalarField half_bg = 0.5 * (w.beta * w.gamma);

    MatrixField chi_x(g);
    chi_x.entry(0, 1) = *w.a;
    chi_x.entry(2, 3) = *w.a;
    chi_x.entry(0, 2) = half_bg;
    chi_x.entry(1, 3) = half_bg;

    MatrixField chi_y(g);
    chi_y.entry(0, 1) = half_bg;
    chi_y.entry(2, 3) = half_bg;
    chi_y.entry(0, 2) = *w.b;
    chi_y.entry(1, 3) = *w.b;

    MatrixField psi_x(g);
    psi_x.entry(0, 3) = w.beta * (*w.b);
    MatrixField psi_y(g);
    psi_y.entry(0, 3) = w.gamma * (*w.a);

    MatrixField tau(g);
    tau.entry(0, 3) = half_bg;

    return {MatrixOneForm{chi_x, chi_y}, MatrixOneForm{psi_x, psi_y}, tau};
}

WilczynskiData spectral_insertion_data(const WilczynskiData& w, double t) {
    WilczynskiData out = w;
    out.beta = t * w.beta;
    out.gamma = t * w.gamma;
    out.V = (t * t) * w.V;
    out.W = (t * t) * w.W;
    return out;
}

ConnectionForm spectral_connection(const WilczynskiData& w, double t, SpectralRoute route,
                                   int order) {
    if (route == SpectralRoute::Insertion)
        return build_connection(spectral_insertion_data(w, t), order);

    ConnectionForm trivial = build_connection(w, order);
    auto [D, N] = metric_split(trivial, lie_quadric_metric(w), order);
    ChiPsiTau cpt = canonical_chi_psi_tau(w);
    MatrixOneForm dtau = covariant_derivative(cpt.tau, trivial, order);
    double c1 = t, c2 = t * t - 1.0, c3 = t * t * t - t;
    return {D.x + c1 * N.x + c2 * (cpt.chi.x + dtau.x) + c3 * cpt.psi.x,
            D.y + c1 * N.y + c2 * (cpt.chi.y + dtau.y) + c3 * cpt.psi.y};
}

MoebiusResiduals moebius_flat_residuals(const WilczynskiData& w, SignConvention sign, int order) {
    if (!w.a || !w.b) throw Error("missing-ab", "residuals need the components a, b");
    ScalarField beta_x = w.beta.derivative(Axis::X, order);
    ScalarField beta_y = w.beta.derivative(Axis::Y, order);
    ScalarField gamma_x = w.gamma.derivative(Axis::X, order);
    ScalarField gamma_y = w.gamma.derivative(Axis::Y, order);
    ScalarField a_x = w.a->derivative(Axis::X, order);
    ScalarField a_y = w.a->derivative(Axis::Y, order);
    ScalarField b_x = w.b->derivative(Axis::X, order);
    ScalarField b_y = w.b->derivative(Axis::Y, order);

    double sgn = (sign == SignConvention::Intro) ? 1.0 : -1.0;
    ScalarField ra = 2.0 * (beta_y * (*w.b)) - w.beta * b_y - 2.0 * (gamma_x * (*w.a)) +
                     sgn * (w.gamma * a_x);
    ScalarField rb = 2.0 * b_x - 2.0 * (w.gamma * beta_y) - w.beta * gamma_y;
    ScalarField rc = 2.0 * a_y - 2.0 * (w.beta * gamma_x) - w.gamma * beta_x;
    ScalarField rcl =
        beta_y.derivative(Axis::Y, order).derivative(Axis::Y, order) -
        gamma_x.derivative(Axis::X, order).derivative(Axis::X, order);

    MoebiusResiduals out;
    out.r_a = ra.max_abs(true);
    out.r_b = rb.max_abs(true);
    out.r_c = rc.max_abs(true);
    out.r_classical = rcl.max_abs(true);
    return out;
}

WilczynskiData reparametrize(const WilczynskiData& w, double lambda, double mu) {
    auto xform = [&](const ScalarField& f, double scale) {
        if (!f.expr_backed())
            throw Error("not-expr-backed", "reparametrize needs Expr-backed fields");
        return ScalarField::from_expr(f.grid(),
                                      Expr::constant(scale) *
                                          f.expr().substitute_scaled(1.0 / lambda, 1.0 / mu));
    };
    WilczynskiData out;
    out.beta = xform(w.beta, mu / (lambda * lambda));
    out.gamma = xform(w.gamma, lambda / (mu * mu));
    out.V = xform(w.V, 1.0 / (lambda * lambda));
    out.W = xform(w.W, 1.0 / (mu * mu));
    if (w.a) out.a = xform(*w.a, 1.0 / (lambda * lambda));
    if (w.b) out.b = xform(*w.b, 1.0 / (mu * mu));
    if (w.alpha) out.alpha = xform(*w.alpha, 1.0);
    return out;
}

namespace {

WilczynskiData extract_core(const Vec4Field& sigma, const Vec4Field& s_x, const Vec4Field& s_y,
                            const Vec4Field& s_xy, const Vec4Field& s_xx, const Vec4Field& s_yy,
                            int order, double asym_tol, ExtractionDiagnostics* diag,
                            const Vec4Field* s_xyx = nullptr, const Vec4Field* s_xyy = nullptr) {
    const Grid& g = sigma.grid();

    // Frame determinant and the log-derivatives of the normalizing factor
    // lambda = |det|^(-1/4); only derivatives of mu := log lambda enter the
    // coefficient corrections, so no fractional powers are needed.
    MatrixField F(g);
    for (int r = 0; r < 4; ++r) {
        F.entry(r, 0) = sigma.comp(r);
        F.entry(r, 1) = s_x.comp(r);
        F.entry(r, 2) = s_y.comp(r);
        F.entry(r, 3) = s_xy.comp(r);
    }
    ScalarField det = F.det();
    ScalarField det_sampled = det.sampled();
    double det_max = det_sampled.max_abs();
    double det_dev = 0.0;
    double det_ref = det_sampled.at(0, 0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double d = det_sampled.at(i, j);
            if (std::abs(d) < 1e-10 * std::max(1.0, det_max))
                throw Error("frame-degenerate", "det(sigma, sigma_x, sigma_y, sigma_xy) ~ 0 at "
                                                "node (" +
                                                    std::to_string(i) + ", " + std::to_string(j) +
                                                    ")");
            det_dev = std::max(det_dev, std::abs(d - det_ref));
        }

    // Log-derivatives of the normalizing factor lambda = |det|^(-1/4); only
    // these enter the coefficient corrections, so no fractional powers are
    // needed. A constant determinant (e.g. an already-normalized frame) has
    // exactly vanishing corrections; skipping them avoids differentiating
    // pure round-off.
    ScalarField mu_x = ScalarField::zero(g), mu_y = ScalarField::zero(g);
    ScalarField mu_xx = mu_x, mu_yy = mu_x, mu_xy = mu_x;
    if (det_dev > 1e-9 * std::abs(det_ref)) {
        mu_x = (-0.25) * (det.derivative(Axis::X, order) / det);
        mu_y = (-0.25) * (det.derivative(Axis::Y, order) / det);
        mu_xx = mu_x.derivative(Axis::X, order);
        mu_yy = mu_y.derivative(Axis::Y, order);
        mu_xy = mu_x.derivative(Axis::Y, order);
    }

    std::vector<double> beta_v(g.size()), gamma_v(g.size());
    std::vector<double> c0xx_v(g.size()), c0yy_v(g.size());
    // Direct V, W reads from the sigma_xy evolution: its sigma_y coefficient
    // is (V + beta_y)/2, pairing with the (V - beta_y)/2 from sigma_xx so
    // that no extracted field needs differentiating. Available only with a
    // constant frame determinant (no normalization corrections).
    bool direct_vw = s_xyx && s_xyy && det_dev <= 1e-9 * std::abs(det_ref);
    std::vector<double> v_direct, w_direct;
    if (direct_vw) {
        v_direct.resize(g.size());
        w_direct.resize(g.size());
    }
    double res_sx = 0.0, res_sy = 0.0, res_sxy = 0.0, coeff_scale = 0.0;

    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            // Extended-precision solves: near-parallel frame columns on
            // strongly deformed surfaces leave little headroom in doubles.
            using MatL = Eigen::Matrix<long double, 4, 4>;
            using VecL = Eigen::Matrix<long double, 4, 1>;
            MatL M = F.at(i, j).cast<long double>();
            Eigen::PartialPivLU<MatL> lu(M);
            Vec4 cxx = lu.solve(s_xx.at(i, j).cast<long double>()).cast<double>();
            Vec4 cyy = lu.solve(s_yy.at(i, j).cast<long double>()).cast<double>();
            coeff_scale = std::max({coeff_scale, cxx.cwiseAbs().maxCoeff(),
                                    cyy.cwiseAbs().maxCoeff()});
            double mx = mu_x.at(i, j), my = mu_y.at(i, j);
            double mxx = mu_xx.at(i, j), myy = mu_yy.at(i, j), mxy = mu_xy.at(i, j);

            // Coefficients relative to the det-normalized frame.
            double beta = cxx[2] - cxx[3] * mx;
            double gamma = cyy[1] - cyy[3] * my;
            double c0xx = mxx - mx * mx + cxx[0] - cxx[1] * mx - cxx[2] * my +
                          cxx[3] * (2.0 * mx * my - mxy);
            double c0yy = myy - my * my + cyy[0] - cyy[1] * mx - cyy[2] * my +
                          cyy[3] * (2.0 * mx * my - mxy);

            res_sx = std::max(res_sx, std::abs(cxx[1] + 2.0 * mx - cxx[3] * my));
            res_sy = std::max(res_sy, std::abs(cyy[2] + 2.0 * my - cyy[3] * mx));
            res_sxy = std::max(res_sxy, std::max(std::abs(cxx[3]), std::abs(cyy[3])));

            int idx = g.index(i, j);
            beta_v[idx] = beta;
            gamma_v[idx] = gamma;
            c0xx_v[idx] = c0xx;
            c0yy_v[idx] = c0yy;
            if (direct_vw) {
                VecL dxy_x = lu.solve(s_xyx->at(i, j).cast<long double>());
                VecL dxy_y = lu.solve(s_xyy->at(i, j).cast<long double>());
                v_direct[idx] = c0xx + double(dxy_x[2]);  // (V-b_y)/2 + (V+b_y)/2
                w_direct[idx] = c0yy + double(dxy_y[1]);  // (W-g_x)/2 + (W+g_x)/2
            }
        }

    if (diag) {
        diag->sigma_x_residual = res_sx;
        diag->sigma_y_residual = res_sy;
        diag->sigma_xy_residual = res_sxy;
    }
    if (res_sxy > asym_tol * std::max(1.0, coeff_scale))
        throw Error("coordinates-not-asymptotic",
                    "sigma_xy coefficient reaches " + std::to_string(res_sxy));

    WilczynskiData out;
    out.beta = ScalarField::from_values(g, std::move(beta_v));
    out.gamma = ScalarField::from_values(g, std::move(gamma_v));
    if (direct_vw) {
        out.V = ScalarField::from_values(g, std::move(v_direct));
        out.W = ScalarField::from_values(g, std::move(w_direct));
    } else {
        // V = 2 c0 + beta_y, W = 2 c0' + gamma_x relative to the normalized lift.
        out.V = 2.0 * ScalarField::from_values(g, std::move(c0xx_v)) +
                out.beta.derivative(Axis::Y, order);
        out.W = 2.0 * ScalarField::from_values(g, std::move(c0yy_v)) +
                out.gamma.derivative(Axis::X, order);
    }
    return out;
}

}  // namespace

WilczynskiData extract_from_immersion(const Vec4Field& sigma, int order, double asym_tol,
                                      ExtractionDiagnostics* diag) {
    Vec4Field s_x = sigma.derivative(Axis::X, order);
    Vec4Field s_y = sigma.derivative(Axis::Y, order);
    Vec4Field s_xy = s_x.derivative(Axis::Y, order);
    Vec4Field s_xx = s_x.derivative(Axis::X, order);
    Vec4Field s_yy = s_y.derivative(Axis::Y, order);
    return extract_core(sigma, s_x, s_y, s_xy, s_xx, s_yy, order, asym_tol, diag);
}

WilczynskiData extract_from_frame(const SurfaceFrame& frame, int order, double asym_tol,
                                  ExtractionDiagnostics* diag) {
    // The frame columns carry sigma_x, sigma_y, sigma_xy consistently with
    // the integrated system, so only the pure second derivatives need finite
    // differences. This keeps the node solves accurate even when the frame
    // spans a large dynamic range.
    Vec4Field sigma = frame_column(frame, 0);
    Vec4Field s_x = frame_column(frame, 1);
    Vec4Field s_y = frame_column(frame, 2);
    Vec4Field s_xy = frame_column(frame, 3);
    Vec4Field s_xx = s_x.derivative(Axis::X, order);
    Vec4Field s_yy = s_y.derivative(Axis::Y, order);
    Vec4Field s_xyx = s_xy.derivative(Axis::X, order);
    Vec4Field s_xyy = s_xy.derivative(Axis::Y, order);
    return extract_core(sigma, s_x, s_y, s_xy, s_xx, s_yy, order, asym_tol, diag, &s_xyx,
                        &s_xyy);
}

}  // namespace mflat
