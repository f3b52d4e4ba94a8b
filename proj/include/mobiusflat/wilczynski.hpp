#pragma once

#include <optional>

#include "mobiusflat/connection.hpp"

namespace mflat {

/// Coefficient quadruple of the frame system
///   sigma_xx = beta sigma_y + (V - beta_y)/2 sigma
///   sigma_yy = gamma sigma_x + (W - gamma_x)/2 sigma
/// in asymptotic coordinates, plus the optional quadratic-differential
/// components (a, b) and the Chebyshev potential alpha.
struct WilczynskiData {
    ScalarField beta, gamma, V, W;
    std::optional<ScalarField> a, b, alpha;

    const Grid& grid() const { return beta.grid(); }

    static WilczynskiData from_exprs(const Grid& g, const Expr& beta, const Expr& gamma,
                                     const Expr& V, const Expr& W);
    static WilczynskiData constants(const Grid& g, double beta, double gamma, double V, double W);
};

/// Frame field with columns (sigma, sigma_x, sigma_y, sigma_xy); det F = 1
/// under Wilczynski normalization.
struct SurfaceFrame {
    MatrixField F;
    double path_residual = 0.0;
};

Vec4Field frame_column(const SurfaceFrame& f, int k);

/// sigma_hat = sigma_xy - (1/2) beta gamma sigma  (fourth column of the
/// hat frame used by the surface-case homology calculus).
Vec4Field hat_column(const SurfaceFrame& f, const WilczynskiData& w);

/// Trivial connection of the frame system, stored as A^T per axis.
ConnectionForm build_connection(const WilczynskiData& w, int order = 4);

/// Max curvature norm of the frame system over interior nodes; zero iff the
/// linear system is integrable (Gauss-Codazzi-Ricci).
double compatibility_residual(const WilczynskiData& w, int order = 4);

/// Gram matrix of the Lie-quadric congruence in the Wilczynski frame.
MetricField lie_quadric_metric(const WilczynskiData& w);

/// Canonical split of the trivial connection against the Lie-quadric metric.
/// Returns (D, N).
std::pair<ConnectionForm, ConnectionForm> split_lie_quadric(const WilczynskiData& w,
                                                            int order = 4);

/// Entrywise closed form of the Lie-quadric N, the independent route checked
/// against metric_split.
ConnectionForm lie_quadric_normal_closed_form(const WilczynskiData& w, int order = 4);

struct ChiPsiTau {
    MatrixOneForm chi;
    MatrixOneForm psi;
    MatrixField tau;
};

/// The canonical filtration-lowering one-forms and the nilpotent section tau
/// of the spectral family (chi from V, W; psi with the single (1,4) slot).
ChiPsiTau canonical_chi_psi_tau(const WilczynskiData& w);

/// The same one-forms built from a quadratic differential (a, b):
/// chi = a eps1 dx + b eps2 dy + (beta gamma/2)(eps2 dx + eps1 dy),
/// psi = (beta b dx + gamma a dy) E14. Requires w.a and w.b.
ChiPsiTau chi_psi_tau_from_ab(const WilczynskiData& w);

enum class SpectralRoute { Insertion, Assembled };

/// Data with coefficients (t beta, t gamma, t^2 V, t^2 W).
WilczynskiData spectral_insertion_data(const WilczynskiData& w, double t);

/// Member of the spectral family d_t, either by coefficient insertion or by
/// assembling D + t N + (t^2-1)(chi + d tau) + (t^3-t) psi. The two routes
/// agree entrywise on compatible data.
ConnectionForm spectral_connection(const WilczynskiData& w, double t,
                                   SpectralRoute route = SpectralRoute::Insertion, int order = 4);

enum class SignConvention { Intro, Derived };

struct MoebiusResiduals {
    double r_a = 0.0;         // 2 beta_y b - beta b_y - 2 gamma_x a -+ gamma a_x
    double r_b = 0.0;         // 2 b_x - 2 gamma beta_y - beta gamma_y
    double r_c = 0.0;         // 2 a_y - 2 beta gamma_x - gamma beta_x
    double r_classical = 0.0; // beta_yyy - gamma_xxx
};

/// Max-norm residuals of the Moebius-flatness equations; needs a, b.
/// The sign of the gamma a_x term in r_a is convention-dependent:
/// Intro uses -gamma a_x, Derived uses +gamma a_x on the right-hand side.
MoebiusResiduals moebius_flat_residuals(const WilczynskiData& w,
                                        SignConvention sign = SignConvention::Intro,
                                        int order = 4);

/// Affine reparametrization x -> lambda x, y -> mu y of Expr-backed data;
/// a and b scale as components of a quadratic differential.
WilczynskiData reparametrize(const WilczynskiData& w, double lambda, double mu);

struct ExtractionDiagnostics {
    double sigma_x_residual = 0.0;   // sigma_x-coefficient of sigma_xx
    double sigma_y_residual = 0.0;   // sigma_y-coefficient of sigma_yy
    double sigma_xy_residual = 0.0;  // asymptotic-coordinate check
};

/// Recovers (beta, gamma, V, W) from an R^4-valued lift on asymptotic
/// coordinates: normalizes to det = 1, solves the node-wise 4x4 systems for
/// sigma_xx and sigma_yy, and reads off the coefficients.
/// Errors: "frame-degenerate", "coordinates-not-asymptotic".
WilczynskiData extract_from_immersion(const Vec4Field& sigma, int order = 4,
                                      double asym_tol = 1e-4,
                                      ExtractionDiagnostics* diag = nullptr);

/// Extraction variant for integrated frames: uses the frame's own
/// sigma_x, sigma_y, sigma_xy columns and differentiates only the pure
/// second derivatives, which keeps the node solves well-posed on frames
/// with exponentially spread column norms.
WilczynskiData extract_from_frame(const SurfaceFrame& frame, int order = 4,
                                  double asym_tol = 1e-4,
                                  ExtractionDiagnostics* diag = nullptr);

// Constant matrices of the surface-case calculus.
Mat4 epsilon1_matrix();  // ones at (1,2) and (3,4)
Mat4 epsilon2_matrix();  // ones at (1,3) and (2,4)
Mat4 e14_matrix();       // single one at (1,4)

}  // namespace mflat
