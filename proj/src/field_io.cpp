#include "mobiusflat/field_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mflat {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Grid parse_grid_spec(std::istream& in) {
    int nx, ny;
    double x0, y0, dx, dy;
    if (!(in >> nx >> ny >> x0 >> y0 >> dx >> dy))
        throw Error("parse-error", "malformed grid header");
    return Grid(nx, ny, x0, y0, dx, dy);
}

}  // namespace

void write_field(std::ostream& out, const ScalarField& f) {
    const Grid& g = f.grid();
    out << "# " << g.nx << ' ' << g.ny << ' ' << fmt(g.x0) << ' ' << fmt(g.y0) << ' '
        << fmt(g.dx) << ' ' << fmt(g.dy) << '\n';
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (i) out << ' ';
            out << fmt(f.at(i, j));
        }
        out << '\n';
    }
}

ScalarField read_field(std::istream& in) {
    char hash;
    if (!(in >> hash) || hash != '#') throw Error("parse-error", "missing '#' field header");
    Grid g = parse_grid_spec(in);
    std::vector<double> v(g.size());
    for (int k = 0; k < g.size(); ++k)
        if (!(in >> v[k])) throw Error("parse-error", "field file truncated at value " +
                                                          std::to_string(k));
    return ScalarField::from_values(g, std::move(v));
}

void write_matrix_field(std::ostream& out, const MatrixField& m) {
    const Grid& g = m.grid();
    out << "# matrixfield " << g.nx << ' ' << g.ny << ' ' << fmt(g.x0) << ' ' << fmt(g.y0) << ' '
        << fmt(g.dx) << ' ' << fmt(g.dy) << '\n';
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            Mat4 v = m.at(i, j);
            for (int k = 0; k < 16; ++k) out << (k ? " " : "") << fmt(v(k / 4, k % 4));
            out << '\n';
        }
}

MatrixField read_matrix_field(std::istream& in) {
    char hash;
    std::string tag;
    if (!(in >> hash >> tag) || hash != '#' || tag != "matrixfield")
        throw Error("parse-error", "missing '# matrixfield' header");
    Grid g = parse_grid_spec(in);
    std::vector<Mat4> vals(g.size());
    for (int k = 0; k < g.size(); ++k)
        for (int e = 0; e < 16; ++e)
            if (!(in >> vals[k](e / 4, e % 4)))
                throw Error("parse-error", "matrix field file truncated");
    return MatrixField::from_values(g, vals);
}

void write_surface(std::ostream& out, const Vec4Field& lift) {
    const Grid& g = lift.grid();
    out << "# surface " << g.nx << ' ' << g.ny << '\n';
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            Vec4 v = lift.at(i, j);
            out << fmt(v[0]) << ' ' << fmt(v[1]) << ' ' << fmt(v[2]) << ' ' << fmt(v[3]) << '\n';
        }
}

void write_surface_chart(std::ostream& out, const Vec4Field& lift, int chart) {
    const Grid& g = lift.grid();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            Vec4 v = lift.at(i, j);
            double d = v[chart];
            if (d == 0.0) throw Error("chart-degenerate", "homogeneous component vanishes");
            int n = 0;
            for (int k = 0; k < 4; ++k) {
                if (k == chart) continue;
                out << (n++ ? " " : "") << fmt(v[k] / d);
            }
            out << '\n';
        }
}

WilczynskiData CoefficientFile::data() const {
    for (const char* key : {"beta", "gamma", "V", "W"})
        if (!has(key)) throw Error("missing-key", std::string("coefficient file lacks '") + key +
                                                      "'");
    WilczynskiData w = WilczynskiData::from_exprs(grid, entries.at("beta"), entries.at("gamma"),
                                                  entries.at("V"), entries.at("W"));
    if (has("a")) w.a = ScalarField::from_expr(grid, entries.at("a"));
    if (has("b")) w.b = ScalarField::from_expr(grid, entries.at("b"));
    if (has("alpha")) w.alpha = ScalarField::from_expr(grid, entries.at("alpha"));
    return w;
}

namespace {

struct KeyValueFile {
    Grid grid;
    std::map<std::string, Expr> entries;
};

KeyValueFile read_key_value(std::istream& in, const std::vector<std::string>& allowed) {
    KeyValueFile out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        bool blank = true;
        for (char c : stripped)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw Error("parse-error",
                        "line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = stripped.substr(0, eq);
        std::string value = stripped.substr(eq + 1);
        auto trim = [](std::string& s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            s = (a == std::string::npos) ? "" : s.substr(a, b - a + 1);
        };
        trim(key);
        trim(value);
        if (key == "grid") {
            std::istringstream gs(value);
            try {
                out.grid = parse_grid_spec(gs);
            } catch (const Error& e) {
                throw Error("parse-error", "line " + std::to_string(lineno) + ": " + e.what());
            }
            continue;
        }
        bool ok = false;
        for (const auto& k : allowed) ok = ok || (k == key);
        if (!ok)
            throw Error("parse-error",
                        "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        try {
            out.entries.emplace(key, Expr::parse(value));
        } catch (const Error& e) {
            throw Error("parse-error", "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace

CoefficientFile read_coefficient_file(std::istream& in) {
    KeyValueFile kv = read_key_value(in, {"beta", "gamma", "V", "W", "a", "b", "alpha"});
    return CoefficientFile{kv.grid, std::move(kv.entries)};
}

CoefficientFile read_coefficient_file_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io-error", "cannot open '" + path + "'");
    return read_coefficient_file(in);
}

ImmersionFile read_immersion_file(std::istream& in) {
    KeyValueFile kv = read_key_value(in, {"r1", "r2", "r3"});
    for (const char* key : {"r1", "r2", "r3"})
        if (!kv.entries.count(key))
            throw Error("missing-key", std::string("immersion file lacks '") + key + "'");
    ImmersionFile out;
    out.grid = kv.grid;
    out.immersion.r = Vec3Field::from_components(
        kv.grid, {ScalarField::from_expr(kv.grid, kv.entries.at("r1")),
                  ScalarField::from_expr(kv.grid, kv.entries.at("r2")),
                  ScalarField::from_expr(kv.grid, kv.entries.at("r3"))});
    return out;
}

ImmersionFile read_immersion_file_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io-error", "cannot open '" + path + "'");
    return read_immersion_file(in);
}

}  // namespace mflat
