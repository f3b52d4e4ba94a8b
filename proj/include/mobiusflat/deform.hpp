#pragma once

#include "mobiusflat/wilczynski.hpp"

namespace mflat {

struct DeformationResult {
    double t = 1.0;
    SurfaceFrame frame;
    Vec4Field surface_lift;     // first frame column
    WilczynskiData extracted;   // coefficients recovered from the lift
    double path_residual = 0.0;
};

/// Integrates dF = F Omega along grid lines with classical 4th-order steps:
/// first along the y = y0 row, then up each column. `substeps` subdivides
/// each cell (the deformation round trips at large t need the local error
/// below the extraction tolerance). path_residual compares against the
/// transposed integration order, relative to the frame size; it certifies
/// flatness and triggers Error("not-integrable") above 100x tol.
SurfaceFrame integrate_frame(const WilczynskiData& w, const Mat4& initial = Mat4::Identity(),
                             double path_tol = 1e-6, int order = 4, int substeps = 1);

/// Integrates the system with coefficients (t beta, t gamma, t^2 V, t^2 W)
/// and extracts the resulting data. At t = 0 the system degenerates to a
/// quadric patch; the immersion checks are skipped there.
DeformationResult deform_surface(const WilczynskiData& w, double t, double path_tol = 1e-6,
                                 int order = 4);

/// Components (beta, gamma) of the Darboux cubic form in asymptotic
/// coordinates; the spectral deformation scales them by t.
std::pair<ScalarField, ScalarField> darboux_cubic(const WilczynskiData& w);

}  // namespace mflat
