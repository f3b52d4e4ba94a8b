#pragma once

#include <string>

#include "mobiusflat/error.hpp"

namespace mflat {

/// Uniform rectangular node grid for the asymptotic-coordinate domain.
/// Interior finite-difference stencils require at least 5 nodes per axis.
struct Grid {
    int nx = 101;
    int ny = 101;
    double x0 = 0.0;
    double y0 = 0.0;
    double dx = 0.01;
    double dy = 0.01;

    Grid() = default;
    Grid(int nx_, int ny_, double x0_, double y0_, double dx_, double dy_)
        : nx(nx_), ny(ny_), x0(x0_), y0(y0_), dx(dx_), dy(dy_) {
        validate();
    }

    void validate() const {
        if (nx < 5 || ny < 5)
            throw Error("grid-too-small", "need at least 5 nodes per axis, got " +
                                              std::to_string(nx) + "x" + std::to_string(ny));
        if (!(dx > 0.0) || !(dy > 0.0))
            throw Error("grid-invalid", "spacings must be positive");
    }

    double x(int i) const { return x0 + i * dx; }
    double y(int j) const { return y0 + j * dy; }
    int index(int i, int j) const { return j * nx + i; }  // x-index varies fastest
    int size() const { return nx * ny; }

    bool operator==(const Grid& o) const {
        return nx == o.nx && ny == o.ny && x0 == o.x0 && y0 == o.y0 && dx == o.dx && dy == o.dy;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

inline void require_same_grid(const Grid& a, const Grid& b) {
    if (a != b) throw Error("grid-mismatch", "fields live on different grids");
}

}  // namespace mflat
