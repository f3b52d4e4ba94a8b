#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mobiusflat/bgg.hpp"
#include "mobiusflat/centroaffine.hpp"
#include "mobiusflat/conserved.hpp"
#include "mobiusflat/deform.hpp"
#include "mobiusflat/field_io.hpp"

namespace {

using namespace mflat;

// Exit codes: 0 pass, 1 residual failure, 2 input error.
constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct Options {
    std::string input;
    std::vector<double> ts;
    double tol = 1e-8;
    int order = 4;
    std::string out_dir = ".";
    std::string sign = "intro";
    std::string format = "text";
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class Report {
public:
    explicit Report(bool kv) : kv_(kv) {}

    void line(const std::string& key, double value, const std::string& label = "") {
        if (kv_) {
            std::cout << key << " = " << num(value) << "\n";
        } else {
            std::cout << (label.empty() ? key : label) << ": " << num(value) << "\n";
        }
    }
    void line(const std::string& key, const std::string& value) {
        std::cout << key << (kv_ ? " = " : ": ") << value << "\n";
    }

private:
    bool kv_;
};

int cmd_check(const Options& opt) {
    CoefficientFile file = read_coefficient_file_path(opt.input);
    WilczynskiData w = file.data();
    Report rep(opt.format == "kv");

    double gc = compatibility_residual(w, opt.order);
    rep.line("residual.gauss_codazzi", gc, "Gauss-Codazzi residual");

    bool pass = gc < opt.tol;
    if (w.a && w.b) {
        SignConvention sign =
            (opt.sign == "derived") ? SignConvention::Derived : SignConvention::Intro;
        MoebiusResiduals mr = moebius_flat_residuals(w, sign, opt.order);
        rep.line("residual.cmf", mr.r_classical, "(cmf) residual beta_yyy - gamma_xxx");
        rep.line("residual.cmf_a", mr.r_a, "(cmf_a) residual");
        rep.line("residual.cmf_b", mr.r_b, "(cmf_b) residual");
        rep.line("residual.cmf_c", mr.r_c, "(cmf_c) residual");
        pass = pass && mr.r_a < opt.tol && mr.r_b < opt.tol && mr.r_c < opt.tol &&
               mr.r_classical < opt.tol;
    }

    auto [D, N] = split_lie_quadric(w, opt.order);
    EnvelopeReport env = envelope_checks(N, lie_quadric_metric(w), D, opt.tol, opt.order);
    rep.line("envelope.enveloped", env.enveloped ? "true" : "false");
    rep.line("envelope.unimodular", env.unimodular ? "true" : "false");
    rep.line("envelope.dg_flat", env.dg_flat ? "true" : "false");
    rep.line("envelope.kernel_rank_min", double(env.kernel_rank_min));
    rep.line("envelope.kernel_rank_max", double(env.kernel_rank_max));
    rep.line("status", pass ? "pass" : "fail");
    return pass ? kPass : kFail;
}

int cmd_spectral(const Options& opt) {
    CoefficientFile file = read_coefficient_file_path(opt.input);
    WilczynskiData w = file.data();
    Report rep(opt.format == "kv");
    bool pass = true;
    for (double t : opt.ts) {
        ConnectionForm ins = spectral_connection(w, t, SpectralRoute::Insertion, opt.order);
        ConnectionForm asm_route = spectral_connection(w, t, SpectralRoute::Assembled, opt.order);
        double curv = curvature(ins, opt.order).max_abs(true);
        double agree = (ins - asm_route).max_abs(true);
        rep.line("curvature[t=" + num(t) + "]", curv);
        rep.line("route_agreement[t=" + num(t) + "]", agree);
        pass = pass && curv < opt.tol && agree < opt.tol;
    }
    rep.line("status", pass ? "pass" : "fail");
    return pass ? kPass : kFail;
}

int cmd_deform(const Options& opt) {
    CoefficientFile file = read_coefficient_file_path(opt.input);
    WilczynskiData w = file.data();
    Report rep(opt.format == "kv");
    bool pass = true;
    for (double t : opt.ts) {
        DeformationResult res = deform_surface(w, t, opt.tol * 1e2, opt.order);
        std::filesystem::create_directories(opt.out_dir);
        std::string surf_path = opt.out_dir + "/surface_t" + num(t) + ".txt";
        std::string chart_path = opt.out_dir + "/surface_t" + num(t) + "_chart.txt";
        {
            std::ofstream surf(surf_path);
            write_surface(surf, res.surface_lift);
            std::ofstream chart(chart_path);
            write_surface_chart(chart, res.surface_lift, 0);
        }
        rep.line("path_residual[t=" + num(t) + "]", res.path_residual);
        auto summary = [&](const char* name, const ScalarField& f) {
            rep.line(std::string(name) + "[t=" + num(t) + "].max_abs", f.max_abs(true));
        };
        summary("extracted.beta", res.extracted.beta);
        summary("extracted.gamma", res.extracted.gamma);
        summary("extracted.V", res.extracted.V);
        summary("extracted.W", res.extracted.W);
        rep.line("surface_file", surf_path);
        pass = pass && res.path_residual < 100.0 * opt.tol;
    }
    rep.line("status", pass ? "pass" : "fail");
    return pass ? kPass : kFail;
}

int cmd_conserved(const Options& opt) {
    CoefficientFile file = read_coefficient_file_path(opt.input);
    WilczynskiData w = file.data();
    if (!w.alpha) throw Error("missing-key", "conserved command needs 'alpha'");
    Report rep(opt.format == "kv");

    auto t1 = theorem1_residuals(*w.alpha, w, opt.order);
    const char* names[5] = {"beta_y", "gamma_x", "V", "W", "unit"};
    bool pass = true;
    for (int k = 0; k < 5; ++k) {
        rep.line(std::string("theorem1.") + names[k], t1[k]);
        pass = pass && t1[k] < opt.tol;
    }
    ConservationReport cons =
        conservation_residual(build_from_potential(*w.alpha, w, opt.order), w, opt.order);
    for (int k = 0; k < 6; ++k)
        rep.line("conservation.t" + std::to_string(k), cons.coefficients[k]);
    rep.line("conservation.total", cons.total);
    pass = pass && cons.total < opt.tol;
    rep.line("status", pass ? "pass" : "fail");
    return pass ? kPass : kFail;
}

int cmd_centroaffine(const Options& opt) {
    ImmersionFile file = read_immersion_file_path(opt.input);
    Report rep(opt.format == "kv");
    CentroAffineData data = decompose(file.immersion, opt.order);
    auto stats = [&](const char* name, const ScalarField& f) {
        double lo = f.at(2, 2), hi = f.at(2, 2);
        const Grid& g = f.grid();
        for (int j = 2; j < g.ny - 2; ++j)
            for (int i = 2; i < g.nx - 2; ++i) {
                lo = std::min(lo, f.at(i, j));
                hi = std::max(hi, f.at(i, j));
            }
        rep.line(std::string(name) + ".min", lo);
        rep.line(std::string(name) + ".max", hi);
    };
    stats("ghat.g11", data.g11);
    stats("ghat.g12", data.g12);
    stats("ghat.g22", data.g22);
    double K = gauss_curvature(data.g11, data.g12, data.g22, opt.order).max_abs(true);
    rep.line("gauss_curvature.max_abs", K);
    double T = std::max(data.T1.max_abs(true), data.T2.max_abs(true));
    rep.line("chebyshev.max_abs", T);
    AdaptedConservedReport cons = adapted_conserved_check(file.immersion,
                                                          AdaptedRoute::DirectLift, opt.order);
    rep.line("conserved.total", cons.total);
    rep.line("status", "report");
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moebius-flat projective surface toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--tol", opt.tol, "residual tolerance")->check(CLI::PositiveNumber);
    app.add_option("--order", opt.order, "finite-difference stencil order")
        ->check(CLI::IsMember({2, 4}));
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--sign", opt.sign, "(cmf_a) sign convention")
        ->check(CLI::IsMember({"intro", "derived"}));
    app.add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"text", "kv"}));

    auto* check = app.add_subcommand("check", "compatibility + flatness residuals");
    check->add_option("input", opt.input, "coefficient file")->required();

    auto* spectral = app.add_subcommand("spectral", "curvature sweep of the family d_t");
    spectral->add_option("input", opt.input, "coefficient file")->required();
    spectral->add_option("--t", opt.ts, "spectral parameter list")->required()->expected(-1);

    auto* deform = app.add_subcommand("deform", "integrate the deformed surface");
    deform->add_option("input", opt.input, "coefficient file")->required();
    deform->add_option("--t", opt.ts, "deformation parameter(s)")->required()->expected(-1);

    auto* conserved = app.add_subcommand("conserved", "Chebyshev-potential residuals");
    conserved->add_option("input", opt.input, "coefficient file (with alpha)")->required();

    auto* centro = app.add_subcommand("centroaffine", "centro-affine invariants of an immersion");
    centro->add_option("input", opt.input, "immersion file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kInputError;
    }

    try {
        if (check->parsed()) return cmd_check(opt);
        if (spectral->parsed()) return cmd_spectral(opt);
        if (deform->parsed()) return cmd_deform(opt);
        if (conserved->parsed()) return cmd_conserved(opt);
        if (centro->parsed()) return cmd_centroaffine(opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::string code = e.code();
        bool input_error = code == "parse-error" || code == "io-error" || code == "missing-key" ||
                           code == "grid-too-small" || code == "grid-invalid";
        return input_error ? kInputError : kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kInputError;
}
