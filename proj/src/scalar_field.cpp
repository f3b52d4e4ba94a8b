#include "mobiusflat/scalar_field.hpp"

#include <algorithm>
#include <cmath>

namespace mflat {

ScalarField::ScalarField() : grid_(), expr_backed_(true), expr_() {}

ScalarField ScalarField::from_expr(const Grid& g, Expr e) {
    ScalarField f;
    f.grid_ = g;
    f.expr_backed_ = true;
    f.expr_ = std::move(e);
    return f;
}

ScalarField ScalarField::from_values(const Grid& g, std::vector<double> values) {
    if (int(values.size()) != g.size())
        throw Error("field-size", "expected " + std::to_string(g.size()) + " values, got " +
                                      std::to_string(values.size()));
    ScalarField f;
    f.grid_ = g;
    f.expr_backed_ = false;
    f.values_ = std::move(values);
    return f;
}

ScalarField ScalarField::constant(const Grid& g, double v) {
    return from_expr(g, Expr::constant(v));
}

const Expr& ScalarField::expr() const {
    if (!expr_backed_) throw Error("not-expr-backed", "field is grid-backed");
    return expr_;
}

const std::vector<double>& ScalarField::values() const { return values_; }

double ScalarField::at(int i, int j) const {
    if (expr_backed_) return expr_.eval(grid_.x(i), grid_.y(j));
    return values_[grid_.index(i, j)];
}

namespace {

double catmull_rom(double f0, double f1, double f2, double f3, double t) {
    return 0.5 * (2.0 * f1 + t * (f2 - f0) + t * t * (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) +
                  t * t * t * (3.0 * f1 - f0 - 3.0 * f2 + f3));
}

}  // namespace

double ScalarField::operator()(double x, double y) const {
    if (expr_backed_) return expr_.eval(x, y);
    // Bicubic interpolation on the 4x4 neighborhood of the containing cell.
    double u = (x - grid_.x0) / grid_.dx;
    double v = (y - grid_.y0) / grid_.dy;
    int i1 = std::clamp(int(std::floor(u)), 1, grid_.nx - 3);
    int j1 = std::clamp(int(std::floor(v)), 1, grid_.ny - 3);
    double tu = u - i1, tv = v - j1;
    double col[4];
    for (int dj = -1; dj <= 2; ++dj) {
        int j = j1 + dj;
        col[dj + 1] = catmull_rom(values_[grid_.index(i1 - 1, j)], values_[grid_.index(i1, j)],
                                  values_[grid_.index(i1 + 1, j)], values_[grid_.index(i1 + 2, j)],
                                  tu);
    }
    return catmull_rom(col[0], col[1], col[2], col[3], tv);
}

std::vector<double> fd_weights_first(double z, const std::vector<double>& nodes) {
    // Fornberg weight recursion, specialized to derivative order 1.
    const int n = int(nodes.size());
    std::vector<double> c0(n, 0.0), c1w(n, 0.0);
    double c1 = 1.0;
    double c4 = nodes[0] - z;
    c0[0] = 1.0;
    for (int i = 1; i < n; ++i) {
        double c2 = 1.0;
        double c5 = c4;
        c4 = nodes[i] - z;
        for (int j = 0; j < i; ++j) {
            double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                c1w[i] = c1 * (c0[i - 1] - c5 * c1w[i - 1]) / c2;
                c0[i] = -c1 * c5 * c0[i - 1] / c2;
            }
            c1w[j] = (c4 * c1w[j] - c0[j]) / c3;
            c0[j] = c4 * c0[j] / c3;
        }
        c1 = c2;
    }
    return c1w;
}

namespace {

struct Stencil {
    int start;                    // first node index of the window
    std::vector<double> weights;  // per window node, already divided by h
};

// Stencils for d/dx at every index of an n-node line with spacing h.
std::vector<Stencil> line_stencils(int n, double h, int order) {
    const int half = order / 2;
    // Boundary windows one node wider than the centered ones, restoring the
    // interior order at the edges.
    const int bwidth = std::min(n, order + 2);
    std::vector<Stencil> out(n);
    for (int i = 0; i < n; ++i) {
        int start;
        int width;
        if (i - half >= 0 && i + half < n) {
            start = i - half;
            width = 2 * half + 1;
        } else {
            width = bwidth;
            start = (i < half) ? 0 : n - bwidth;
        }
        std::vector<double> nodes(width);
        for (int k = 0; k < width; ++k) nodes[k] = (start + k) * h;
        out[i] = Stencil{start, fd_weights_first(i * h, nodes)};
    }
    return out;
}

}  // namespace

ScalarField ScalarField::derivative(Axis axis, int order) const {
    if (order != 2 && order != 4 && order != 6 && order != 8)
        throw Error("bad-order", "stencil order must be 2, 4, 6 or 8");
    if (expr_backed_) return from_expr(grid_, expr_.diff(axis));

    const int n = (axis == Axis::X) ? grid_.nx : grid_.ny;
    const double h = (axis == Axis::X) ? grid_.dx : grid_.dy;
    if (n < order + 1) throw Error("grid-too-small", "axis extent below stencil width");
    auto stencils = line_stencils(n, h, order);

    std::vector<double> out(grid_.size());
    if (axis == Axis::X) {
        for (int j = 0; j < grid_.ny; ++j)
            for (int i = 0; i < grid_.nx; ++i) {
                const Stencil& s = stencils[i];
                double acc = 0.0;
                for (size_t k = 0; k < s.weights.size(); ++k)
                    acc += s.weights[k] * values_[grid_.index(s.start + int(k), j)];
                out[grid_.index(i, j)] = acc;
            }
    } else {
        for (int j = 0; j < grid_.ny; ++j) {
            const Stencil& s = stencils[j];
            for (int i = 0; i < grid_.nx; ++i) {
                double acc = 0.0;
                for (size_t k = 0; k < s.weights.size(); ++k)
                    acc += s.weights[k] * values_[grid_.index(i, s.start + int(k))];
                out[grid_.index(i, j)] = acc;
            }
        }
    }
    return from_values(grid_, std::move(out));
}

ScalarField ScalarField::sampled() const {
    if (!expr_backed_) return *this;
    std::vector<double> v(grid_.size());
    for (int j = 0; j < grid_.ny; ++j)
        for (int i = 0; i < grid_.nx; ++i) v[grid_.index(i, j)] = expr_.eval(grid_.x(i), grid_.y(j));
    return from_values(grid_, std::move(v));
}

double ScalarField::max_abs(bool interior_only) const {
    double m = 0.0;
    int lo = interior_only ? 2 : 0;
    for (int j = lo; j < grid_.ny - lo; ++j)
        for (int i = lo; i < grid_.nx - lo; ++i) m = std::max(m, std::abs(at(i, j)));
    return m;
}

namespace {

template <class F>
ScalarField combine(const ScalarField& a, const ScalarField& b, F&& f) {
    require_same_grid(a.grid(), b.grid());
    const Grid& g = a.grid();
    std::vector<double> v(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) v[g.index(i, j)] = f(a.at(i, j), b.at(i, j));
    return ScalarField::from_values(g, std::move(v));
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    if (a.expr_backed() && b.expr_backed()) {
        require_same_grid(a.grid(), b.grid());
        return ScalarField::from_expr(a.grid(), a.expr() + b.expr());
    }
    return combine(a, b, [](double x, double y) { return x + y; });
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    if (a.expr_backed() && b.expr_backed()) {
        require_same_grid(a.grid(), b.grid());
        return ScalarField::from_expr(a.grid(), a.expr() - b.expr());
    }
    return combine(a, b, [](double x, double y) { return x - y; });
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    if (a.expr_backed() && b.expr_backed()) {
        require_same_grid(a.grid(), b.grid());
        return ScalarField::from_expr(a.grid(), a.expr() * b.expr());
    }
    return combine(a, b, [](double x, double y) { return x * y; });
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
    if (a.expr_backed() && b.expr_backed()) {
        require_same_grid(a.grid(), b.grid());
        return ScalarField::from_expr(a.grid(), a.expr() / b.expr());
    }
    return combine(a, b, [](double x, double y) { return x / y; });
}

ScalarField ScalarField::operator-() const {
    if (expr_backed_) return from_expr(grid_, -expr_);
    std::vector<double> v(values_.size());
    for (size_t k = 0; k < v.size(); ++k) v[k] = -values_[k];
    return from_values(grid_, std::move(v));
}

ScalarField operator*(double s, const ScalarField& f) {
    if (f.expr_backed()) return ScalarField::from_expr(f.grid(), Expr::constant(s) * f.expr());
    std::vector<double> v(f.grid().size());
    for (int j = 0; j < f.grid().ny; ++j)
        for (int i = 0; i < f.grid().nx; ++i) v[f.grid().index(i, j)] = s * f.at(i, j);
    return ScalarField::from_values(f.grid(), std::move(v));
}

ScalarField operator+(const ScalarField& f, double s) {
    if (f.expr_backed()) return ScalarField::from_expr(f.grid(), f.expr() + Expr::constant(s));
    std::vector<double> v(f.grid().size());
    for (int j = 0; j < f.grid().ny; ++j)
        for (int i = 0; i < f.grid().nx; ++i) v[f.grid().index(i, j)] = f.at(i, j) + s;
    return ScalarField::from_values(f.grid(), std::move(v));
}

}  // namespace mflat
