#include "mobiusflat/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace mflat {

namespace {
enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Exp, Sin, Cos, Cosh, Sinh };
}

struct Expr::Node {
    Kind kind;
    double value = 0.0;   // Const
    Axis axis = Axis::X;  // Var
    int exponent = 0;     // Pow
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_const(double v) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::Const;
    n->value = v;
    return n;
}

bool is_const(const NodePtr& n, double* v = nullptr) {
    if (n->kind != Kind::Const) return false;
    if (v) *v = n->value;
    return true;
}

bool is_const_val(const NodePtr& n, double v) {
    return n->kind == Kind::Const && n->value == v;
}

NodePtr add(NodePtr a, NodePtr b) {
    double ca, cb;
    if (is_const(a, &ca) && is_const(b, &cb)) return make_const(ca + cb);
    if (is_const_val(a, 0.0)) return b;
    if (is_const_val(b, 0.0)) return a;
    return make(Kind::Add, std::move(a), std::move(b));
}

NodePtr neg(NodePtr a) {
    double ca;
    if (is_const(a, &ca)) return make_const(-ca);
    if (a->kind == Kind::Neg) return a->a;
    return make(Kind::Neg, std::move(a));
}

NodePtr sub(NodePtr a, NodePtr b) {
    double ca, cb;
    if (is_const(a, &ca) && is_const(b, &cb)) return make_const(ca - cb);
    if (is_const_val(b, 0.0)) return a;
    if (is_const_val(a, 0.0)) return neg(std::move(b));
    return make(Kind::Sub, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
    double ca, cb;
    if (is_const(a, &ca) && is_const(b, &cb)) return make_const(ca * cb);
    if (is_const_val(a, 0.0) || is_const_val(b, 0.0)) return make_const(0.0);
    if (is_const_val(a, 1.0)) return b;
    if (is_const_val(b, 1.0)) return a;
    if (is_const_val(a, -1.0)) return neg(std::move(b));
    if (is_const_val(b, -1.0)) return neg(std::move(a));
    return make(Kind::Mul, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
    double ca, cb;
    if (is_const(b, &cb) && cb != 0.0) {
        if (is_const(a, &ca)) return make_const(ca / cb);
        if (cb == 1.0) return a;
    }
    if (is_const_val(a, 0.0) && !is_const_val(b, 0.0)) return make_const(0.0);
    return make(Kind::Div, std::move(a), std::move(b));
}

NodePtr powi(NodePtr a, int e) {
    if (e == 0) return make_const(1.0);
    if (e == 1) return a;
    double ca;
    if (is_const(a, &ca)) return make_const(std::pow(ca, e));
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::Pow;
    n->exponent = e;
    n->a = std::move(a);
    return n;
}

NodePtr fn(Kind k, NodePtr a) {
    double ca;
    if (is_const(a, &ca)) {
        switch (k) {
            case Kind::Exp: return make_const(std::exp(ca));
            case Kind::Sin: return make_const(std::sin(ca));
            case Kind::Cos: return make_const(std::cos(ca));
            case Kind::Cosh: return make_const(std::cosh(ca));
            case Kind::Sinh: return make_const(std::sinh(ca));
            default: break;
        }
    }
    return make(k, std::move(a));
}

NodePtr diff_node(const NodePtr& n, Axis ax) {
    switch (n->kind) {
        case Kind::Const: return make_const(0.0);
        case Kind::Var: return make_const(n->axis == ax ? 1.0 : 0.0);
        case Kind::Add: return add(diff_node(n->a, ax), diff_node(n->b, ax));
        case Kind::Sub: return sub(diff_node(n->a, ax), diff_node(n->b, ax));
        case Kind::Neg: return neg(diff_node(n->a, ax));
        case Kind::Mul:
            return add(mul(diff_node(n->a, ax), n->b), mul(n->a, diff_node(n->b, ax)));
        case Kind::Div:
            // (u/v)' = u'/v - u v'/v^2
            return sub(div(diff_node(n->a, ax), n->b),
                       div(mul(n->a, diff_node(n->b, ax)), powi(n->b, 2)));
        case Kind::Pow:
            return mul(mul(make_const(double(n->exponent)), powi(n->a, n->exponent - 1)),
                       diff_node(n->a, ax));
        case Kind::Exp: return mul(fn(Kind::Exp, n->a), diff_node(n->a, ax));
        case Kind::Sin: return mul(fn(Kind::Cos, n->a), diff_node(n->a, ax));
        case Kind::Cos: return neg(mul(fn(Kind::Sin, n->a), diff_node(n->a, ax)));
        case Kind::Cosh: return mul(fn(Kind::Sinh, n->a), diff_node(n->a, ax));
        case Kind::Sinh: return mul(fn(Kind::Cosh, n->a), diff_node(n->a, ax));
    }
    throw Error("internal", "unhandled expression node");
}

double eval_node(const Expr::Node* n, double x, double y) {
    switch (n->kind) {
        case Kind::Const: return n->value;
        case Kind::Var: return n->axis == Axis::X ? x : y;
        case Kind::Add: return eval_node(n->a.get(), x, y) + eval_node(n->b.get(), x, y);
        case Kind::Sub: return eval_node(n->a.get(), x, y) - eval_node(n->b.get(), x, y);
        case Kind::Neg: return -eval_node(n->a.get(), x, y);
        case Kind::Mul: return eval_node(n->a.get(), x, y) * eval_node(n->b.get(), x, y);
        case Kind::Div: return eval_node(n->a.get(), x, y) / eval_node(n->b.get(), x, y);
        case Kind::Pow: return std::pow(eval_node(n->a.get(), x, y), n->exponent);
        case Kind::Exp: return std::exp(eval_node(n->a.get(), x, y));
        case Kind::Sin: return std::sin(eval_node(n->a.get(), x, y));
        case Kind::Cos: return std::cos(eval_node(n->a.get(), x, y));
        case Kind::Cosh: return std::cosh(eval_node(n->a.get(), x, y));
        case Kind::Sinh: return std::sinh(eval_node(n->a.get(), x, y));
    }
    throw Error("internal", "unhandled expression node");
}

NodePtr subst_node(const NodePtr& n, double cx, double cy) {
    switch (n->kind) {
        case Kind::Const: return n;
        case Kind::Var:
            return mul(make_const(n->axis == Axis::X ? cx : cy),
                       [&] {
                           auto v = std::make_shared<Expr::Node>();
                           v->kind = Kind::Var;
                           v->axis = n->axis;
                           return v;
                       }());
        case Kind::Add: return add(subst_node(n->a, cx, cy), subst_node(n->b, cx, cy));
        case Kind::Sub: return sub(subst_node(n->a, cx, cy), subst_node(n->b, cx, cy));
        case Kind::Neg: return neg(subst_node(n->a, cx, cy));
        case Kind::Mul: return mul(subst_node(n->a, cx, cy), subst_node(n->b, cx, cy));
        case Kind::Div: return div(subst_node(n->a, cx, cy), subst_node(n->b, cx, cy));
        case Kind::Pow: return powi(subst_node(n->a, cx, cy), n->exponent);
        default: return fn(n->kind, subst_node(n->a, cx, cy));
    }
}

void print_node(const Expr::Node* n, std::ostringstream& out) {
    switch (n->kind) {
        case Kind::Const: out << n->value; return;
        case Kind::Var: out << (n->axis == Axis::X ? 'x' : 'y'); return;
        case Kind::Add:
            out << '(';
            print_node(n->a.get(), out);
            out << " + ";
            print_node(n->b.get(), out);
            out << ')';
            return;
        case Kind::Sub:
            out << '(';
            print_node(n->a.get(), out);
            out << " - ";
            print_node(n->b.get(), out);
            out << ')';
            return;
        case Kind::Neg:
            out << "(-";
            print_node(n->a.get(), out);
            out << ')';
            return;
        case Kind::Mul:
            out << '(';
            print_node(n->a.get(), out);
            out << " * ";
            print_node(n->b.get(), out);
            out << ')';
            return;
        case Kind::Div:
            out << '(';
            print_node(n->a.get(), out);
            out << " / ";
            print_node(n->b.get(), out);
            out << ')';
            return;
        case Kind::Pow:
            out << '(';
            print_node(n->a.get(), out);
            out << ")^" << n->exponent;
            return;
        case Kind::Exp: out << "exp("; break;
        case Kind::Sin: out << "sin("; break;
        case Kind::Cos: out << "cos("; break;
        case Kind::Cosh: out << "cosh("; break;
        case Kind::Sinh: out << "sinh("; break;
    }
    print_node(n->a.get(), out);
    out << ')';
}

// -------- parser --------

struct Parser {
    std::string_view text;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error("parse-error", what + " at column " + std::to_string(pos + 1) +
                                        " in \"" + std::string(text) + "\"");
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (eat('+')) lhs = add(lhs, parse_term());
            else if (eat('-')) lhs = sub(lhs, parse_term());
            else return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (eat('*')) lhs = mul(lhs, parse_unary());
            else if (eat('/')) lhs = div(lhs, parse_unary());
            else return lhs;
        }
    }

    NodePtr parse_unary() {
        if (eat('-')) return neg(parse_unary());
        if (eat('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (eat('^')) return powi(base, parse_int_exponent());
        return base;
    }

    int parse_int_exponent() {
        skip_ws();
        bool paren = eat('(');
        skip_ws();
        int sign = 1;
        if (eat('-')) sign = -1;
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected integer exponent");
        int value = std::atoi(std::string(text.substr(start, pos - start)).c_str());
        if (paren && !eat(')')) fail("expected ')' after exponent");
        return sign * value;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of expression");
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            std::string tail(text.substr(pos));
            double v = std::strtod(tail.c_str(), &end);
            if (end == tail.c_str()) fail("malformed number");
            pos += size_t(end - tail.c_str());
            return make_const(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < text.size() &&
                   std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
            std::string name(text.substr(start, pos - start));
            if (name == "x" || name == "y") {
                auto v = std::make_shared<Expr::Node>();
                v->kind = Kind::Var;
                v->axis = (name == "x") ? Axis::X : Axis::Y;
                return v;
            }
            Kind k;
            if (name == "exp") k = Kind::Exp;
            else if (name == "sin") k = Kind::Sin;
            else if (name == "cos") k = Kind::Cos;
            else if (name == "cosh") k = Kind::Cosh;
            else if (name == "sinh") k = Kind::Sinh;
            else fail("unknown identifier '" + name + "'");
            if (!eat('(')) fail("expected '(' after function name");
            NodePtr arg = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return fn(k, arg);
        }
        if (eat('(')) {
            NodePtr inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

Expr::Expr() : node_(make_const(0.0)) {}

Expr Expr::constant(double v) { return Expr(make_const(v)); }

Expr Expr::var(Axis a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->axis = a;
    return Expr(std::move(n));
}

Expr Expr::parse(std::string_view text) {
    Parser p{text};
    NodePtr n = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return Expr(std::move(n));
}

Expr Expr::diff(Axis a) const { return Expr(diff_node(node_, a)); }

double Expr::eval(double x, double y) const {
    double v = eval_node(node_.get(), x, y);
    if (!std::isfinite(v)) {
        throw Error("expr-nonfinite", "expression " + str() + " is not finite at (" +
                                          std::to_string(x) + ", " + std::to_string(y) + ")");
    }
    return v;
}

Expr Expr::substitute_scaled(double cx, double cy) const {
    return Expr(subst_node(node_, cx, cy));
}

bool Expr::is_zero() const { return is_const_val(node_, 0.0); }

bool Expr::is_constant(double* value) const { return is_const(node_, value); }

std::string Expr::str() const {
    std::ostringstream out;
    out.precision(17);
    print_node(node_.get(), out);
    return out.str();
}

Expr Expr::operator-() const { return Expr(neg(node_)); }
Expr operator+(const Expr& a, const Expr& b) { return Expr(add(a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(sub(a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(mul(a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(div(a.node_, b.node_)); }
Expr pow(const Expr& a, int e) { return Expr(powi(a.node_, e)); }
Expr exp(const Expr& a) { return Expr(fn(Kind::Exp, a.node_)); }
Expr sin(const Expr& a) { return Expr(fn(Kind::Sin, a.node_)); }
Expr cos(const Expr& a) { return Expr(fn(Kind::Cos, a.node_)); }
Expr cosh(const Expr& a) { return Expr(fn(Kind::Cosh, a.node_)); }
Expr sinh(const Expr& a) { return Expr(fn(Kind::Sinh, a.node_)); }

}  // namespace mflat
