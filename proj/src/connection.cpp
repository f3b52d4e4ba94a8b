#include "mobiusflat/connection.hpp"

#include <cmath>

namespace mflat {

void MetricField::check(double tol) const {
    const Grid& g = grid();
    double scale = G.max_abs();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            Mat4 m = G.at(i, j);
            if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, scale))
                throw Error("metric-not-symmetric",
                            "node (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            if (std::abs(m.determinant()) < tol * std::max(1.0, scale))
                throw Error("degenerate-metric",
                            "node (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        }
}

MatrixField curvature(const ConnectionForm& omega, int order) {
    require_same_grid(omega.x.grid(), omega.y.grid());
    return omega.y.derivative(Axis::X, order) - omega.x.derivative(Axis::Y, order) +
           commutator(omega.x, omega.y);
}

std::pair<ConnectionForm, ConnectionForm> metric_split(const ConnectionForm& omega,
                                                       const MetricField& G, int order) {
    require_same_grid(omega.grid(), G.grid());
    G.check();
    MatrixField Ginv = G.G.adjugate_inverse();
    auto split_axis = [&](const MatrixField& Om, Axis ax) {
        MatrixField dG = G.G.derivative(ax, order);
        return 0.5 * (Om + Ginv * Om.transpose() * G.G - Ginv * dG);
    };
    ConnectionForm N{split_axis(omega.x, Axis::X), split_axis(omega.y, Axis::Y)};
    ConnectionForm D{omega.x - N.x, omega.y - N.y};
    return {D, N};
}

ConnectionForm gauge(const GaugeField& phi, const ConnectionForm& omega, int order) {
    require_same_grid(phi.grid(), omega.grid());
    MatrixField inv = phi.Phi.adjugate_inverse();
    auto act = [&](const MatrixField& Om, Axis ax) {
        return phi.Phi * Om * inv - phi.Phi.derivative(ax, order) * inv;
    };
    return {act(omega.x, Axis::X), act(omega.y, Axis::Y)};
}

Mat4 exp_nilpotent(const Mat4& m, double tol) {
    Mat4 m2 = m * m;
    Mat4 m4 = m2 * m2;
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (m4.cwiseAbs().maxCoeff() > tol * scale * scale * scale * scale)
        throw Error("not-nilpotent", "M^4 does not vanish");
    return Mat4::Identity() + m + 0.5 * m2 + (1.0 / 6.0) * m2 * m;
}

MatrixField exp_nilpotent(const MatrixField& m, double tol) {
    // Nilpotency checked on sampled values; the series itself stays symbolic
    // for Expr-backed fields.
    const Grid& g = m.grid();
    double scale = std::max(1.0, m.max_abs());
    MatrixField m2 = m * m;
    MatrixField m4 = m2 * m2;
    if (m4.max_abs() > tol * scale * scale * scale * scale)
        throw Error("not-nilpotent", "M^4 does not vanish on the grid");
    return MatrixField::constant(g, Mat4::Identity()) + m + 0.5 * m2 + (1.0 / 6.0) * (m2 * m);
}

MatrixOneForm covariant_derivative(const MatrixField& tau, const ConnectionForm& omega,
                                   int order) {
    require_same_grid(tau.grid(), omega.grid());
    return {tau.derivative(Axis::X, order) + commutator(omega.x, tau),
            tau.derivative(Axis::Y, order) + commutator(omega.y, tau)};
}

MatrixField exterior_covariant_derivative(const MatrixOneForm& eta, const ConnectionForm& omega,
                                          int order) {
    require_same_grid(eta.grid(), omega.grid());
    MatrixField dx_part = eta.y.derivative(Axis::X, order) + commutator(omega.x, eta.y);
    MatrixField dy_part = eta.x.derivative(Axis::Y, order) + commutator(omega.y, eta.x);
    return dx_part - dy_part;
}

ConnectionForm log_derivative_gauge(const MatrixField& tau, const ConnectionForm& omega,
                                    int order) {
    MatrixOneForm grad = covariant_derivative(tau, omega, order);
    double scale = std::max(1.0, grad.max_abs()) * std::max(1.0, tau.max_abs());
    MatrixField total_x = grad.x;
    MatrixField total_y = grad.y;
    MatrixField term_x = grad.x;
    MatrixField term_y = grad.y;
    double factorial = 1.0;
    bool terminated = false;
    for (int k = 1; k <= 6; ++k) {
        term_x = commutator(tau, term_x);
        term_y = commutator(tau, term_y);
        factorial *= double(k + 1);
        if (std::max(term_x.max_abs(), term_y.max_abs()) <= 1e-14 * scale) {
            terminated = true;
            break;
        }
        total_x = total_x + (1.0 / factorial) * term_x;
        total_y = total_y + (1.0 / factorial) * term_y;
    }
    if (!terminated) throw Error("ad-not-nilpotent", "log-derivative series did not terminate");
    return {omega.x - total_x, omega.y - total_y};
}

EnvelopeReport envelope_checks(const ConnectionForm& N, const MetricField& G,
                               const std::optional<ConnectionForm>& D, double tol, int order) {
    require_same_grid(N.grid(), G.grid());
    const Grid& g = N.grid();
    EnvelopeReport rep;

    // E1 null for G, and N preserves E1 = <e1> and E2 = <e1,e2,e3>.
    double env = G.G.entry(0, 0).max_abs();
    for (const MatrixField* part : {&N.x, &N.y}) {
        for (int r = 1; r < 4; ++r) env = std::max(env, part->entry(r, 0).max_abs());
        for (int c = 0; c < 3; ++c) env = std::max(env, part->entry(3, c).max_abs());
    }
    rep.envelope_residual = env;
    rep.enveloped = env < tol;

    rep.trace_residual = std::max(N.x.trace().max_abs(), N.y.trace().max_abs());
    rep.unimodular = rep.trace_residual < tol;

    // Rank deficiency of X -> N(X) node-wise via the 16x2 singular values.
    rep.kernel_rank.resize(g.size());
    rep.kernel_rank_min = 2;
    rep.kernel_rank_max = 0;
    const double nscale = std::max(1.0, N.max_abs());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            Eigen::Matrix<double, 16, 2> M;
            Mat4 nx = N.x.at(i, j), ny = N.y.at(i, j);
            for (int k = 0; k < 16; ++k) {
                M(k, 0) = nx(k / 4, k % 4);
                M(k, 1) = ny(k / 4, k % 4);
            }
            Eigen::JacobiSVD<Eigen::Matrix<double, 16, 2>> svd(M);
            auto sv = svd.singularValues();
            int rank = 0;
            if (sv(0) > 1e-12 * nscale) {
                rank = 1;
                if (sv(1) > 1e-8 * sv(0)) rank = 2;
            }
            int deficiency = 2 - rank;
            rep.kernel_rank[g.index(i, j)] = deficiency;
            rep.kernel_rank_min = std::min(rep.kernel_rank_min, deficiency);
            rep.kernel_rank_max = std::max(rep.kernel_rank_max, deficiency);
        }

    if (D) {
        rep.dg_curvature = curvature(*D, order).max_abs(true);
        rep.dg_flat = rep.dg_curvature < tol;
    }
    return rep;
}

}  // namespace mflat
