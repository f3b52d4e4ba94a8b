#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "mobiusflat/centroaffine.hpp"
#include "mobiusflat/wilczynski.hpp"

namespace mflat {

// Text formats are locale-independent with '.' as the decimal separator.

/// Grid field file: header "# nx ny x0 y0 dx dy", then nx*ny values with the
/// x-index varying fastest, row-major in y.
void write_field(std::ostream& out, const ScalarField& f);
ScalarField read_field(std::istream& in);

/// Matrix field block format: "# matrixfield nx ny x0 y0 dx dy", then 16
/// values per node in row-major matrix order.
void write_matrix_field(std::ostream& out, const MatrixField& m);
MatrixField read_matrix_field(std::istream& in);

/// Surface file: "# surface nx ny", then 4 homogeneous components per node.
void write_surface(std::ostream& out, const Vec4Field& lift);

/// Affine-chart export: 3 components per node, dividing by the homogeneous
/// component `chart` (plot data).
void write_surface_chart(std::ostream& out, const Vec4Field& lift, int chart = 0);

/// Parsed coefficient input file: lines "beta = <expr>", "gamma = ...",
/// "V = ...", "W = ...", optional "a", "b", "alpha",
/// plus "grid = nx ny x0 y0 dx dy". '#' starts a comment.
struct CoefficientFile {
    Grid grid;
    std::map<std::string, Expr> entries;

    bool has(const std::string& key) const { return entries.count(key) != 0; }
    WilczynskiData data() const;  // Error("missing-key") without beta/gamma/V/W
};

/// Error("parse-error") messages carry the 1-based line number.
CoefficientFile read_coefficient_file(std::istream& in);
CoefficientFile read_coefficient_file_path(const std::string& path);

/// Immersion input file: "r1 = <expr>", "r2 = ...", "r3 = ...", "grid = ...".
struct ImmersionFile {
    Grid grid;
    CentroAffineImmersion immersion;
};
ImmersionFile read_immersion_file(std::istream& in);
ImmersionFile read_immersion_file_path(const std::string& path);

}  // namespace mflat
