#include "mobiusflat/matrix_field.hpp"

#include <cmath>

namespace mflat {

MatrixField::MatrixField() : MatrixField(Grid()) {}

MatrixField::MatrixField(const Grid& g) : grid_(g) {
    for (auto& f : e_) f = ScalarField::zero(g);
}

MatrixField MatrixField::constant(const Grid& g, const Mat4& m) {
    MatrixField out(g);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out.entry(r, c) = ScalarField::constant(g, m(r, c));
    return out;
}

MatrixField MatrixField::from_entries(const Grid& g, std::array<ScalarField, 16> entries) {
    MatrixField out(g);
    for (auto& f : entries) require_same_grid(g, f.grid());
    out.e_ = std::move(entries);
    return out;
}

MatrixField MatrixField::from_values(const Grid& g, const std::vector<Mat4>& values) {
    if (int(values.size()) != g.size())
        throw Error("field-size", "matrix field node count mismatch");
    MatrixField out(g);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            std::vector<double> v(g.size());
            for (int k = 0; k < g.size(); ++k) v[k] = values[k](r, c);
            out.entry(r, c) = ScalarField::from_values(g, std::move(v));
        }
    return out;
}

bool MatrixField::expr_backed() const {
    for (const auto& f : e_)
        if (!f.expr_backed()) return false;
    return true;
}

Mat4 MatrixField::at(int i, int j) const {
    Mat4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = entry(r, c).at(i, j);
    return m;
}

Mat4 MatrixField::eval(double x, double y) const {
    Mat4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = entry(r, c)(x, y);
    return m;
}

std::vector<Mat4> MatrixField::sampled_values() const {
    std::vector<Mat4> out(grid_.size());
    for (int j = 0; j < grid_.ny; ++j)
        for (int i = 0; i < grid_.nx; ++i) out[grid_.index(i, j)] = at(i, j);
    return out;
}

MatrixField MatrixField::derivative(Axis axis, int order) const {
    MatrixField out(grid_);
    for (int k = 0; k < 16; ++k) out.e_[k] = e_[k].derivative(axis, order);
    return out;
}

MatrixField MatrixField::transpose() const {
    MatrixField out(grid_);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out.entry(r, c) = entry(c, r);
    return out;
}

namespace {

ScalarField det3(const MatrixField& m, const int rows[3], const int cols[3]) {
    auto e = [&](int r, int c) { return m.entry(rows[r], cols[c]); };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
           e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

}  // namespace

ScalarField MatrixField::det() const {
    ScalarField acc = ScalarField::zero(grid_);
    for (int c = 0; c < 4; ++c) {
        int rows[3] = {1, 2, 3};
        int cols[3];
        int k = 0;
        for (int cc = 0; cc < 4; ++cc)
            if (cc != c) cols[k++] = cc;
        ScalarField term = entry(0, c) * det3(*this, rows, cols);
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

MatrixField MatrixField::adjugate_inverse() const {
    ScalarField d = det();
    MatrixField out(grid_);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            int rows[3], cols[3];
            int k = 0;
            for (int rr = 0; rr < 4; ++rr)
                if (rr != c) rows[k++] = rr;  // transposed cofactor
            k = 0;
            for (int cc = 0; cc < 4; ++cc)
                if (cc != r) cols[k++] = cc;
            ScalarField cof = det3(*this, rows, cols);
            double sign = ((r + c) % 2 == 0) ? 1.0 : -1.0;
            out.entry(r, c) = (sign * cof) / d;
        }
    return out;
}

ScalarField MatrixField::trace() const {
    return entry(0, 0) + entry(1, 1) + entry(2, 2) + entry(3, 3);
}

double MatrixField::max_abs(bool interior_only) const {
    double m = 0.0;
    for (const auto& f : e_) m = std::max(m, f.max_abs(interior_only));
    return m;
}

MatrixField operator+(const MatrixField& a, const MatrixField& b) {
    require_same_grid(a.grid(), b.grid());
    MatrixField out(a.grid());
    for (int k = 0; k < 16; ++k) out.e_[k] = a.e_[k] + b.e_[k];
    return out;
}

MatrixField operator-(const MatrixField& a, const MatrixField& b) {
    require_same_grid(a.grid(), b.grid());
    MatrixField out(a.grid());
    for (int k = 0; k < 16; ++k) out.e_[k] = a.e_[k] - b.e_[k];
    return out;
}

MatrixField operator*(const MatrixField& a, const MatrixField& b) {
    require_same_grid(a.grid(), b.grid());
    MatrixField out(a.grid());
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            ScalarField acc = a.entry(r, 0) * b.entry(0, c);
            for (int k = 1; k < 4; ++k) acc = acc + a.entry(r, k) * b.entry(k, c);
            out.entry(r, c) = acc;
        }
    return out;
}

MatrixField operator*(double s, const MatrixField& m) {
    MatrixField out(m.grid());
    for (int k = 0; k < 16; ++k) out.e_[k] = s * m.e_[k];
    return out;
}

MatrixField operator*(const ScalarField& s, const MatrixField& m) {
    require_same_grid(s.grid(), m.grid());
    MatrixField out(m.grid());
    for (int k = 0; k < 16; ++k) out.e_[k] = s * m.e_[k];
    return out;
}

MatrixField MatrixField::operator-() const {
    MatrixField out(grid_);
    for (int k = 0; k < 16; ++k) out.e_[k] = -e_[k];
    return out;
}

MatrixField wedge_bracket_component(const MatrixField& omega_x, const MatrixField& omega_y,
                                    const MatrixField& eta_x, const MatrixField& eta_y) {
    require_same_grid(omega_x.grid(), eta_x.grid());
    return commutator(omega_x, eta_y) - commutator(omega_y, eta_x);
}

// ---- Vec4Field ----

Vec4Field::Vec4Field() : Vec4Field(Grid()) {}

Vec4Field::Vec4Field(const Grid& g) : grid_(g) {
    for (auto& f : c_) f = ScalarField::zero(g);
}

Vec4Field Vec4Field::from_components(const Grid& g, std::array<ScalarField, 4> c) {
    Vec4Field out(g);
    for (auto& f : c) require_same_grid(g, f.grid());
    out.c_ = std::move(c);
    return out;
}

Vec4Field Vec4Field::constant(const Grid& g, const Vec4& v) {
    Vec4Field out(g);
    for (int k = 0; k < 4; ++k) out.c_[k] = ScalarField::constant(g, v[k]);
    return out;
}

Vec4 Vec4Field::at(int i, int j) const {
    Vec4 v;
    for (int k = 0; k < 4; ++k) v[k] = c_[k].at(i, j);
    return v;
}

Vec4Field Vec4Field::derivative(Axis axis, int order) const {
    Vec4Field out(grid_);
    for (int k = 0; k < 4; ++k) out.c_[k] = c_[k].derivative(axis, order);
    return out;
}

double Vec4Field::max_abs(bool interior_only) const {
    double m = 0.0;
    for (const auto& f : c_) m = std::max(m, f.max_abs(interior_only));
    return m;
}

Vec4Field operator+(const Vec4Field& a, const Vec4Field& b) {
    require_same_grid(a.grid(), b.grid());
    Vec4Field out(a.grid());
    for (int k = 0; k < 4; ++k) out.c_[k] = a.c_[k] + b.c_[k];
    return out;
}

Vec4Field operator-(const Vec4Field& a, const Vec4Field& b) {
    require_same_grid(a.grid(), b.grid());
    Vec4Field out(a.grid());
    for (int k = 0; k < 4; ++k) out.c_[k] = a.c_[k] - b.c_[k];
    return out;
}

Vec4Field operator*(const MatrixField& m, const Vec4Field& v) {
    require_same_grid(m.grid(), v.grid());
    Vec4Field out(v.grid());
    for (int r = 0; r < 4; ++r) {
        ScalarField acc = m.entry(r, 0) * v.c_[0];
        for (int k = 1; k < 4; ++k) acc = acc + m.entry(r, k) * v.c_[k];
        out.c_[r] = acc;
    }
    return out;
}

Vec4Field operator*(const ScalarField& s, const Vec4Field& v) {
    require_same_grid(s.grid(), v.grid());
    Vec4Field out(v.grid());
    for (int k = 0; k < 4; ++k) out.c_[k] = s * v.c_[k];
    return out;
}

Vec4Field operator*(double s, const Vec4Field& v) {
    Vec4Field out(v.grid());
    for (int k = 0; k < 4; ++k) out.c_[k] = s * v.c_[k];
    return out;
}

}  // namespace mflat
