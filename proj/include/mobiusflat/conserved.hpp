#pragma once

#include <array>

#include "mobiusflat/wilczynski.hpp"

namespace mflat {

/// Degree-2 polynomial q(t) = v0 + t v1 + t^2 v2 of coefficient columns in
/// the frame (sigma, sigma_x, sigma_y, sigma_xy).
struct PolyConservedQuantity {
    Vec4Field v0, v1, v2;
};

/// Quantity built from a Chebyshev potential: a = 2 alpha_x, b = 2 alpha_y,
/// c = -2 alpha_xy, v0 = -2 sigma_hat = (beta gamma, 0, 0, -2),
/// v1 = (c, b, a, 0), v2 = (1 + ab/2, 0, 0, 0).
PolyConservedQuantity build_from_potential(const ScalarField& alpha, const WilczynskiData& w,
                                           int order = 4);

struct ConservationReport {
    /// Max norm of the t^0..t^5 coefficient one-forms of d_t q(t) for the
    /// exp(-t alpha id)-gauged family D + t(N + d alpha) + (t^2-1)chi + (t^3-t)psi.
    std::array<double, 6> coefficients{};
    double total = 0.0;
};

/// Conservation residual, expanded symbolically in t (never sampled in t).
/// chi and psi default to the canonical one-forms of the spectral family.
ConservationReport conservation_residual(const PolyConservedQuantity& q, const WilczynskiData& w,
                                         int order = 4,
                                         const MatrixOneForm* chi_override = nullptr,
                                         const MatrixOneForm* psi_override = nullptr);

/// Max-norm residuals of the five flat-centro-affine-metric equations
///   beta_y = 2 alpha_xx,   gamma_x = 2 alpha_yy,
///   V = 2(beta alpha_y + alpha_x^2),  W = 2(gamma alpha_x + alpha_y^2),
///   1 = beta gamma - 4 alpha_x alpha_y.
std::array<double, 5> theorem1_residuals(const ScalarField& alpha, const WilczynskiData& w,
                                         int order = 4);

struct EquivalenceReport {
    std::array<double, 5> theorem1{};
    ConservationReport conservation;
    double max_gauss_curvature = 0.0;  // only when an immersion is attached
    bool has_curvature_section = false;
};

class CentroAffineImmersion;  // centroaffine.hpp

EquivalenceReport equivalence_check(const WilczynskiData& w, const ScalarField& alpha,
                                    const CentroAffineImmersion* immersion = nullptr,
                                    int order = 4);

}  // namespace mflat
