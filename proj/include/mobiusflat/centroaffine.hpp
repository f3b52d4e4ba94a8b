#pragma once

#include <array>

#include "mobiusflat/connection.hpp"

namespace mflat {

/// R^3-valued field (a parametrized hypersurface in the affine subgeometry).
class Vec3Field {
public:
    Vec3Field() = default;
    explicit Vec3Field(const Grid& g) {
        for (auto& f : c_) f = ScalarField::zero(g);
    }
    static Vec3Field from_components(const Grid& g, std::array<ScalarField, 3> c) {
        Vec3Field out(g);
        for (auto& f : c) require_same_grid(g, f.grid());
        out.c_ = std::move(c);
        return out;
    }
    const Grid& grid() const { return c_[0].grid(); }
    ScalarField& comp(int k) { return c_[k]; }
    const ScalarField& comp(int k) const { return c_[k]; }
    Eigen::Vector3d at(int i, int j) const {
        return {c_[0].at(i, j), c_[1].at(i, j), c_[2].at(i, j)};
    }
    Vec3Field derivative(Axis a, int order = 4) const {
        Vec3Field out;
        for (int k = 0; k < 3; ++k) out.c_[k] = c_[k].derivative(a, order);
        return out;
    }

private:
    std::array<ScalarField, 3> c_;
};

/// Centro-affine immersion r: Sigma -> V = R^3, viewed projectively through
/// the chart v -> span(v + p) with p the fourth standard basis vector; the
/// lifts are R = (r, 1) and R_hat = (-r, 1).
struct CentroAffineImmersion {
    Vec3Field r;
    const Grid& grid() const { return r.grid(); }
};

/// Output of the centro-affine decomposition d_X Y = nabla~_X Y + g(X,Y) r.
struct CentroAffineData {
    ScalarField g11, g12, g22;      // induced centro-affine metric
    std::array<ScalarField, 6> h;   // difference tensor h^k_ij, order
                                    // (1_11, 1_12, 1_22, 2_11, 2_12, 2_22)
    ScalarField T1, T2;             // Chebyshev covector T_i = h^k_ik
    ScalarField transversality;     // det(r_u, r_v, r)
};

/// Node-wise solve of the 3x3 systems r_ij = Gamma~ r_u,v + g_ij r, then
/// h = Gamma~ - LeviCivita(g) and its g-trace.
/// Error("not-centro-affine") when det(r_u, r_v, r) vanishes at a node.
CentroAffineData decompose(const CentroAffineImmersion& imm, int order = 4);

/// Gaussian curvature of a 2x2 metric via the Brioschi formula.
ScalarField gauss_curvature(const ScalarField& g11, const ScalarField& g12,
                            const ScalarField& g22, int order = 4);

/// Lowered difference tensor h_ijk = g_kl h^l_ij as the 4 independent
/// components (111, 112, 122, 222) plus the two redundancy slots used by the
/// total-symmetry check (h_121, h_221 computed independently).
struct LoweredCubic {
    ScalarField h111, h112, h122, h222;
    ScalarField h121, h221;
};
LoweredCubic lower_cubic(const CentroAffineData& d);

enum class AdaptedRoute { DirectLift, WilczynskiContext };

struct AdaptedConservedReport {
    /// Max norms of the t^0, t^1, t^2, t^3, t^4 coefficients of
    /// d_t(R_hat + t^2 R) for the adapted-metric family D + tN + (t^2-1)chi.
    std::array<double, 5> coefficients{};
    double total = 0.0;
};

/// Conserved-quantity check on explicit lifts: R the surface lift, p the
/// constant vector with R_hat = 2p - R. `quantity_r_override` replaces R in
/// the quantity (not in the metric construction), for perturbation tests.
/// The WilczynskiContext route additionally requires the centro-affine metric
/// to be hyperbolic; Error("elliptic-metric") otherwise.
AdaptedConservedReport adapted_conserved_check(const Vec4Field& R, const Vec4& p,
                                               AdaptedRoute route = AdaptedRoute::DirectLift,
                                               int order = 4,
                                               const Vec4Field* quantity_r_override = nullptr);

AdaptedConservedReport adapted_conserved_check(const CentroAffineImmersion& imm,
                                               AdaptedRoute route = AdaptedRoute::DirectLift,
                                               int order = 4);

}  // namespace mflat
