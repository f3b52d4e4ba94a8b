#pragma once

#include <vector>

#include "mobiusflat/expr.hpp"
#include "mobiusflat/grid.hpp"

namespace mflat {

/// Real-valued function on a 2D grid domain, backed either by an expression
/// tree (exact derivatives) or by sampled node values (finite differences of
/// order 2 or 4, one-sided at the boundary ring).
///
/// Arithmetic between two Expr-backed fields stays symbolic; anything else
/// falls back to node-wise sampling. Off-node evaluation of a grid-backed
/// field uses bicubic (Catmull-Rom) interpolation.
class ScalarField {
public:
    ScalarField();  // zero on the default grid

    static ScalarField from_expr(const Grid& g, Expr e);
    static ScalarField from_values(const Grid& g, std::vector<double> values);
    static ScalarField constant(const Grid& g, double v);
    static ScalarField zero(const Grid& g) { return constant(g, 0.0); }

    const Grid& grid() const { return grid_; }
    bool expr_backed() const { return expr_backed_; }
    const Expr& expr() const;  // Error("not-expr-backed") for sampled fields

    double at(int i, int j) const;
    double operator()(double x, double y) const;

    /// d/dx or d/dy. Exact for Expr backing; central stencils of the given
    /// order (2, 4, or 6) at interior nodes otherwise, one-sided at the
    /// boundary ring.
    ScalarField derivative(Axis axis, int order = 4) const;

    ScalarField sampled() const;  // force grid backing
    double max_abs(bool interior_only = false) const;

    friend ScalarField operator+(const ScalarField&, const ScalarField&);
    friend ScalarField operator-(const ScalarField&, const ScalarField&);
    friend ScalarField operator*(const ScalarField&, const ScalarField&);
    friend ScalarField operator/(const ScalarField&, const ScalarField&);
    ScalarField operator-() const;

    friend ScalarField operator*(double s, const ScalarField& f);
    friend ScalarField operator*(const ScalarField& f, double s) { return s * f; }
    friend ScalarField operator+(const ScalarField& f, double s);
    friend ScalarField operator+(double s, const ScalarField& f) { return f + s; }
    friend ScalarField operator-(const ScalarField& f, double s) { return f + (-s); }
    friend ScalarField operator-(double s, const ScalarField& f) { return (-f) + s; }

private:
    Grid grid_;
    bool expr_backed_ = true;
    Expr expr_;
    std::vector<double> values_;

    const std::vector<double>& values() const;  // valid only when grid-backed
};

/// Finite-difference weights for the first derivative at `z` over the given
/// node positions (Fornberg's algorithm, exact for any stencil layout).
std::vector<double> fd_weights_first(double z, const std::vector<double>& nodes);

}  // namespace mflat
