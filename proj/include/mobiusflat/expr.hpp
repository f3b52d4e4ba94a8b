#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "mobiusflat/error.hpp"

namespace mflat {

enum class Axis { X, Y };

/// Immutable expression tree in the variables x, y with constants, the four
/// arithmetic operations, integer powers and exp/sin/cos/cosh/sinh.
/// Differentiation is closed (diff of an Expr is an Expr) and evaluation is
/// checked for finiteness at sample time.
class Expr {
public:
    Expr();  // the zero expression

    static Expr constant(double v);
    static Expr var(Axis a);

    /// Parse plain infix syntax, e.g. "2*x + sin(y)^2 / (1 + x)".
    /// Exponents are integer literals. Throws Error("parse-error") with the
    /// offending column on malformed input.
    static Expr parse(std::string_view text);

    Expr diff(Axis a) const;
    double eval(double x, double y) const;  // Error("expr-nonfinite") on Inf/NaN

    /// Substitute x -> cx*x, y -> cy*y (affine reparametrization support).
    Expr substitute_scaled(double cx, double cy) const;

    bool is_zero() const;
    bool is_constant(double* value = nullptr) const;

    std::string str() const;

    Expr operator-() const;
    friend Expr operator+(const Expr&, const Expr&);
    friend Expr operator-(const Expr&, const Expr&);
    friend Expr operator*(const Expr&, const Expr&);
    friend Expr operator/(const Expr&, const Expr&);
    friend Expr pow(const Expr&, int exponent);
    friend Expr exp(const Expr&);
    friend Expr sin(const Expr&);
    friend Expr cos(const Expr&);
    friend Expr cosh(const Expr&);
    friend Expr sinh(const Expr&);

    struct Node;  // implementation detail, public only for the helpers in expr.cpp

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

inline Expr operator+(const Expr& a, double b) { return a + Expr::constant(b); }
inline Expr operator+(double a, const Expr& b) { return Expr::constant(a) + b; }
inline Expr operator-(const Expr& a, double b) { return a - Expr::constant(b); }
inline Expr operator-(double a, const Expr& b) { return Expr::constant(a) - b; }
inline Expr operator*(const Expr& a, double b) { return a * Expr::constant(b); }
inline Expr operator*(double a, const Expr& b) { return Expr::constant(a) * b; }
inline Expr operator/(const Expr& a, double b) { return a / Expr::constant(b); }
inline Expr operator/(double a, const Expr& b) { return Expr::constant(a) / b; }

}  // namespace mflat
