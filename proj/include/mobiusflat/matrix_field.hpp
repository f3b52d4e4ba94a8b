#pragma once

#include <Eigen/Dense>
#include <array>

#include "mobiusflat/scalar_field.hpp"

namespace mflat {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

/// 4x4-matrix-valued field, stored entrywise as ScalarFields so that symbolic
/// (Expr) backing propagates through sums, products, adjugate inverses and
/// derivatives. All matrices act on coefficient column vectors relative to
/// the frame (sigma, sigma_x, sigma_y, sigma_xy).
class MatrixField {
public:
    MatrixField();  // zero on the default grid
    explicit MatrixField(const Grid& g);

    static MatrixField constant(const Grid& g, const Mat4& m);
    static MatrixField from_entries(const Grid& g, std::array<ScalarField, 16> entries);
    static MatrixField from_values(const Grid& g, const std::vector<Mat4>& values);

    const Grid& grid() const { return grid_; }
    bool expr_backed() const;

    ScalarField& entry(int r, int c) { return e_[4 * r + c]; }
    const ScalarField& entry(int r, int c) const { return e_[4 * r + c]; }

    Mat4 at(int i, int j) const;                 // value at a node
    Mat4 eval(double x, double y) const;         // value anywhere
    std::vector<Mat4> sampled_values() const;

    MatrixField derivative(Axis axis, int order = 4) const;
    MatrixField transpose() const;
    ScalarField det() const;        // Laplace expansion (symbolic-capable)
    MatrixField adjugate_inverse() const;
    ScalarField trace() const;
    double max_abs(bool interior_only = false) const;

    friend MatrixField operator+(const MatrixField&, const MatrixField&);
    friend MatrixField operator-(const MatrixField&, const MatrixField&);
    friend MatrixField operator*(const MatrixField&, const MatrixField&);
    friend MatrixField operator*(double, const MatrixField&);
    friend MatrixField operator*(const ScalarField&, const MatrixField&);
    MatrixField operator-() const;

private:
    Grid grid_;
    std::array<ScalarField, 16> e_;
};

inline MatrixField commutator(const MatrixField& a, const MatrixField& b) {
    return a * b - b * a;
}

/// [omega wedge eta] two-form component on e1^e2:  [w_x, n_y] - [w_y, n_x].
MatrixField wedge_bracket_component(const MatrixField& omega_x, const MatrixField& omega_y,
                                    const MatrixField& eta_x, const MatrixField& eta_y);

/// 4-component column-vector field (coefficient columns, surface lifts, ...).
class Vec4Field {
public:
    Vec4Field();
    explicit Vec4Field(const Grid& g);
    static Vec4Field from_components(const Grid& g, std::array<ScalarField, 4> c);
    static Vec4Field constant(const Grid& g, const Vec4& v);

    const Grid& grid() const { return grid_; }
    ScalarField& comp(int k) { return c_[k]; }
    const ScalarField& comp(int k) const { return c_[k]; }

    Vec4 at(int i, int j) const;
    Vec4Field derivative(Axis axis, int order = 4) const;
    double max_abs(bool interior_only = false) const;

    friend Vec4Field operator+(const Vec4Field&, const Vec4Field&);
    friend Vec4Field operator-(const Vec4Field&, const Vec4Field&);
    friend Vec4Field operator*(const MatrixField&, const Vec4Field&);
    friend Vec4Field operator*(const ScalarField&, const Vec4Field&);
    friend Vec4Field operator*(double, const Vec4Field&);

private:
    Grid grid_;
    std::array<ScalarField, 4> c_;
};

}  // namespace mflat
