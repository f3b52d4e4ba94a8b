#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mobiusflat/bgg.hpp"
#include "mobiusflat/centroaffine.hpp"
#include "mobiusflat/conserved.hpp"
#include "mobiusflat/deform.hpp"
#include "mobiusflat/field_io.hpp"

namespace py = pybind11;
using namespace mflat;

namespace {

Grid make_grid(int nx, int ny, double x0, double y0, double dx, double dy) {
    return Grid(nx, ny, x0, y0, dx, dy);
}

WilczynskiData data_from_strings(const Grid& g, const std::string& beta, const std::string& gamma,
                                 const std::string& V, const std::string& W,
                                 const std::string& a, const std::string& b,
                                 const std::string& alpha) {
    WilczynskiData w = WilczynskiData::from_exprs(g, Expr::parse(beta), Expr::parse(gamma),
                                                  Expr::parse(V), Expr::parse(W));
    if (!a.empty()) w.a = ScalarField::from_expr(g, Expr::parse(a));
    if (!b.empty()) w.b = ScalarField::from_expr(g, Expr::parse(b));
    if (!alpha.empty()) w.alpha = ScalarField::from_expr(g, Expr::parse(alpha));
    return w;
}

py::dict spectral_sweep(const WilczynskiData& w, const std::vector<double>& ts, int order) {
    py::list rows;
    for (double t : ts) {
        ConnectionForm ins = spectral_connection(w, t, SpectralRoute::Insertion, order);
        ConnectionForm assembled = spectral_connection(w, t, SpectralRoute::Assembled, order);
        py::dict row;
        row["t"] = t;
        row["curvature"] = curvature(ins, order).max_abs(true);
        row["route_agreement"] = (ins - assembled).max_abs(true);
        rows.append(row);
    }
    py::dict out;
    out["rows"] = rows;
    return out;
}

py::dict deform_dict(const WilczynskiData& w, double t, int order) {
    DeformationResult res = deform_surface(w, t, 1e-6, order);
    py::dict out;
    out["t"] = t;
    out["path_residual"] = res.path_residual;
    out["beta_max"] = res.extracted.beta.max_abs(true);
    out["gamma_max"] = res.extracted.gamma.max_abs(true);
    out["V_max"] = res.extracted.V.max_abs(true);
    out["W_max"] = res.extracted.W.max_abs(true);
    return out;
}

py::dict centroaffine_report(const std::string& r1, const std::string& r2, const std::string& r3,
                             const Grid& g, int order) {
    CentroAffineImmersion imm;
    imm.r = Vec3Field::from_components(g, {ScalarField::from_expr(g, Expr::parse(r1)),
                                           ScalarField::from_expr(g, Expr::parse(r2)),
                                           ScalarField::from_expr(g, Expr::parse(r3))});
    CentroAffineData data = decompose(imm, order);
    py::dict out;
    out["g11"] = data.g11.at(g.nx / 2, g.ny / 2);
    out["g12"] = data.g12.at(g.nx / 2, g.ny / 2);
    out["g22"] = data.g22.at(g.nx / 2, g.ny / 2);
    out["gauss_curvature"] = gauss_curvature(data.g11, data.g12, data.g22, order).max_abs(true);
    out["chebyshev"] = std::max(data.T1.max_abs(true), data.T2.max_abs(true));
    out["conserved_total"] = adapted_conserved_check(imm, AdaptedRoute::DirectLift, order).total;
    return out;
}

py::dict bgg_report(const WilczynskiData& w, int order) {
    QuadraticDifferential q = QuadraticDifferential::from_data(w);
    auto [cy1, cy2] = cotton_york_residual(w, q, order);
    py::dict out;
    out["cotton_york_1"] = cy1.max_abs(true);
    out["cotton_york_2"] = cy2.max_abs(true);
    out["cup"] = cup_residual(w, q, order).max_abs(true);
    MatrixOneForm Q = normal_correction(w);
    auto [D, N] = split_lie_quadric(w, order);
    ConnectionForm dq{D.x - Q.x, D.y - Q.y};
    out["normality"] = boundary(curvature(dq, order)).max_abs(true);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Moebius-flat projective surface toolkit";

    py::register_exception<Error>(m, "MflatError");

    py::class_<Grid>(m, "Grid")
        .def(py::init(&make_grid), py::arg("nx") = 101, py::arg("ny") = 101, py::arg("x0") = 0.0,
             py::arg("y0") = 0.0, py::arg("dx") = 0.01, py::arg("dy") = 0.01)
        .def_readonly("nx", &Grid::nx)
        .def_readonly("ny", &Grid::ny);

    py::class_<WilczynskiData>(m, "WilczynskiData")
        .def_static("from_exprs", &data_from_strings, py::arg("grid"), py::arg("beta"),
                    py::arg("gamma"), py::arg("V"), py::arg("W"), py::arg("a") = "",
                    py::arg("b") = "", py::arg("alpha") = "");

    m.def("eval_expr", [](const std::string& text, double x, double y) {
        return Expr::parse(text).eval(x, y);
    });
    m.def("diff_expr", [](const std::string& text, const std::string& axis) {
        return Expr::parse(text).diff(axis == "x" ? Axis::X : Axis::Y).str();
    });

    m.def("compatibility_residual",
          [](const WilczynskiData& w, int order) { return compatibility_residual(w, order); },
          py::arg("data"), py::arg("order") = 4);

    m.def("moebius_flat_residuals",
          [](const WilczynskiData& w, const std::string& sign, int order) {
              MoebiusResiduals r = moebius_flat_residuals(
                  w, sign == "derived" ? SignConvention::Derived : SignConvention::Intro, order);
              py::dict out;
              out["r_a"] = r.r_a;
              out["r_b"] = r.r_b;
              out["r_c"] = r.r_c;
              out["r_classical"] = r.r_classical;
              return out;
          },
          py::arg("data"), py::arg("sign") = "intro", py::arg("order") = 4);

    m.def("spectral_sweep", &spectral_sweep, py::arg("data"), py::arg("ts"),
          py::arg("order") = 4);

    m.def("theorem1_residuals",
          [](const WilczynskiData& w, int order) {
              if (!w.alpha) throw Error("missing-key", "data has no alpha");
              return theorem1_residuals(*w.alpha, w, order);
          },
          py::arg("data"), py::arg("order") = 4);

    m.def("conservation_residual",
          [](const WilczynskiData& w, int order) {
              if (!w.alpha) throw Error("missing-key", "data has no alpha");
              return conservation_residual(build_from_potential(*w.alpha, w, order), w, order)
                  .total;
          },
          py::arg("data"), py::arg("order") = 4);

    m.def("deform", &deform_dict, py::arg("data"), py::arg("t"), py::arg("order") = 4);

    m.def("darboux_cubic", [](const WilczynskiData& w) {
        auto [b, g] = darboux_cubic(w);
        return py::make_tuple(b.max_abs(true), g.max_abs(true));
    });

    m.def("centroaffine_report", &centroaffine_report, py::arg("r1"), py::arg("r2"),
          py::arg("r3"), py::arg("grid"), py::arg("order") = 4);

    m.def("bgg_report", &bgg_report, py::arg("data"), py::arg("order") = 4);
}
