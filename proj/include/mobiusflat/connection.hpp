#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mobiusflat/matrix_field.hpp"

namespace mflat {

/// Matrix-valued one-form on the 2D domain, given by its two coordinate
/// components. Connections are stored in the coefficient-column convention:
/// a connection nabla acts on coefficient columns u by du + Omega u, so the
/// trivial connection of the frame system d(psi) = A psi is stored as A^T.
struct MatrixOneForm {
    MatrixField x, y;

    MatrixOneForm() = default;
    MatrixOneForm(MatrixField x_, MatrixField y_) : x(std::move(x_)), y(std::move(y_)) {}
    explicit MatrixOneForm(const Grid& g) : x(g), y(g) {}

    const Grid& grid() const { return x.grid(); }
    double max_abs(bool interior_only = false) const {
        return std::max(x.max_abs(interior_only), y.max_abs(interior_only));
    }
};

using ConnectionForm = MatrixOneForm;

inline MatrixOneForm operator+(const MatrixOneForm& a, const MatrixOneForm& b) {
    return {a.x + b.x, a.y + b.y};
}
inline MatrixOneForm operator-(const MatrixOneForm& a, const MatrixOneForm& b) {
    return {a.x - b.x, a.y - b.y};
}
inline MatrixOneForm operator*(double s, const MatrixOneForm& a) { return {s * a.x, s * a.y}; }

/// Gram matrix of a metric on the trivial rank-4 bundle; symmetric and
/// invertible at every node.
struct MetricField {
    MatrixField G;

    const Grid& grid() const { return G.grid(); }
    /// Verifies symmetry and non-degeneracy node-wise.
    /// Throws Error("degenerate-metric") naming the first bad node.
    void check(double tol = 1e-12) const;
};

struct GaugeField {
    MatrixField Phi;
    const Grid& grid() const { return Phi.grid(); }
};

/// Curvature two-form component R_{e1,e2} = d_x Omega_y - d_y Omega_x + [Omega_x, Omega_y].
MatrixField curvature(const ConnectionForm& omega, int order = 4);

/// Splits Omega = D + N against the metric G:  N = (Omega + G^-1 Omega^T G - G^-1 dG)/2
/// per axis. Returns (D, N). Contracts: G N = N^T G and dG = D^T G + G D.
std::pair<ConnectionForm, ConnectionForm> metric_split(const ConnectionForm& omega,
                                                       const MetricField& G, int order = 4);

/// Phi . Omega = Phi Omega Phi^-1 - (dPhi) Phi^-1 per axis.
ConnectionForm gauge(const GaugeField& phi, const ConnectionForm& omega, int order = 4);

/// exp(M) = I + M + M^2/2 + M^3/6 for 4-step nilpotent M (M^4 = 0, checked).
Mat4 exp_nilpotent(const Mat4& m, double tol = 1e-9);
MatrixField exp_nilpotent(const MatrixField& m, double tol = 1e-9);

/// Right-logarithmic-derivative gauge: exp(tau) . Omega computed as
/// Omega - sum_k ad^k(tau)(nabla tau)/(k+1)!  with nabla tau = d tau + [Omega, tau],
/// truncated when the series terminates. Error("ad-not-nilpotent") if it does
/// not terminate within 6 terms.
ConnectionForm log_derivative_gauge(const MatrixField& tau, const ConnectionForm& omega,
                                    int order = 4);

/// Derivative of a matrix field coupled to a connection: d tau + [Omega, tau].
MatrixOneForm covariant_derivative(const MatrixField& tau, const ConnectionForm& omega,
                                   int order = 4);

/// Exterior covariant derivative of a matrix one-form eta:
/// (d^Omega eta)_{e1,e2} = D_x eta_y - D_y eta_x with D_a M = d_a M + [Omega_a, M].
MatrixField exterior_covariant_derivative(const MatrixOneForm& eta, const ConnectionForm& omega,
                                          int order = 4);

/// Report for the second-order-contact checks of a split (D, N) against G.
/// Filtration: E1 = span(first frame column), E2 = span(first three).
struct EnvelopeReport {
    bool enveloped = false;
    bool unimodular = false;
    bool dg_flat = false;
    double envelope_residual = 0.0;  // filtration-preservation + nullity of E1
    double trace_residual = 0.0;     // max |tr N|
    double dg_curvature = 0.0;       // max curvature of D
    std::vector<int> kernel_rank;    // per node: 2 - rank of X -> N(X)
    int kernel_rank_min = 0;
    int kernel_rank_max = 0;
};

EnvelopeReport envelope_checks(const ConnectionForm& N, const MetricField& G,
                               const std::optional<ConnectionForm>& D = std::nullopt,
                               double tol = 1e-9, int order = 4);

}  // namespace mflat
