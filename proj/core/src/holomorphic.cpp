#include "bcm/holomorphic.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace bcm {

namespace detail {

struct Node {
    enum class Kind { Var, Lit, Neg, Add, Sub, Mul, Div, Pow, Exp };
    Kind kind;
    Complex value{};   // Lit
    int exponent = 0;  // Pow
    std::shared_ptr<const Node> a, b;
};

using NodePtr = std::shared_ptr<const Node>;

namespace {

NodePtr make_lit(Complex c) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Lit;
    n->value = c;
    return n;
}

NodePtr make_var() {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Var;
    return n;
}

NodePtr make_unary(Node::Kind k, NodePtr a) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    return n;
}

NodePtr make_binary(Node::Kind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_pow(NodePtr a, int e) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Pow;
    n->a = std::move(a);
    n->exponent = e;
    return n;
}

// ---- parser -------------------------------------------------------------

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw Error(ErrorCode::SyntaxError, msg + " at offset " + std::to_string(at), at);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool match(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    bool at_atom_start() {
        const char c = peek();
        return c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
               std::isalpha(static_cast<unsigned char>(c));
    }

    NodePtr parse_expr() {
        NodePtr left = parse_term();
        while (true) {
            const char c = peek();
            if (c == '+' || c == '-') {
                ++pos;
                NodePtr right = parse_term();
                left = make_binary(c == '+' ? Node::Kind::Add : Node::Kind::Sub, left, right);
            } else {
                return left;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr left = parse_factor();
        while (true) {
            const char c = peek();
            if (c == '*' || c == '/') {
                ++pos;
                NodePtr right = parse_factor();
                left = make_binary(c == '*' ? Node::Kind::Mul : Node::Kind::Div, left, right);
            } else if (at_atom_start()) {
                // implicit multiplication: 2z, 3(z+1), z exp(z)
                NodePtr right = parse_factor();
                left = make_binary(Node::Kind::Mul, left, right);
            } else {
                return left;
            }
        }
    }

    NodePtr parse_factor() {
        if (match('-')) return make_unary(Node::Kind::Neg, parse_factor());
        if (match('+')) return parse_factor();
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        while (peek() == '^') {
            ++pos;
            base = make_pow(base, parse_int_exponent());
        }
        return base;
    }

    int parse_int_exponent() {
        skip_ws();
        const std::size_t start = pos;
        bool neg = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            neg = text[pos] == '-';
            ++pos;
        }
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected integer exponent", start < text.size() ? pos : start);
        long e = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            e = e * 10 + (text[pos] - '0');
            if (e > 1000) fail("exponent too large", start);
            ++pos;
        }
        return static_cast<int>(neg ? -e : e);
    }

    NodePtr parse_atom() {
        skip_ws();
        const std::size_t start = pos;
        if (pos >= text.size()) fail("unexpected end of input", pos);
        const char c = text[pos];

        if (c == '(') {
            ++pos;
            NodePtr e = parse_expr();
            if (!match(')')) fail("expected ')'", pos);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos;
            while (end < text.size() && std::isalnum(static_cast<unsigned char>(text[end]))) ++end;
            const std::string name = text.substr(pos, end - pos);
            if (name == "z") {
                pos = end;
                return make_var();
            }
            if (name == "i") {
                pos = end;
                return make_lit(Complex(0, 1));
            }
            if (name == "exp") {
                pos = end;
                if (!match('(')) fail("expected '(' after exp", pos);
                NodePtr arg = parse_expr();
                if (!match(')')) fail("expected ')'", pos);
                return make_unary(Node::Kind::Exp, arg);
            }
            throw Error(ErrorCode::UnsupportedFunction,
                        "unknown identifier '" + name + "' at offset " + std::to_string(start), start);
        }
        fail(std::string("unexpected character '") + c + "'", pos);
    }

    NodePtr parse_number() {
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        }
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            // consume an exponent only when it is well formed; otherwise the
            // letter belongs to a following identifier (e.g. "3exp(z)")
            std::size_t p = pos + 1;
            if (p < text.size() && (text[p] == '+' || text[p] == '-')) ++p;
            if (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
                pos = p;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            }
        }
        const double v = std::strtod(text.substr(start, pos - start).c_str(), nullptr);
        // adjacent 'i' makes an imaginary literal, unless it starts a longer
        // identifier ("2if" stays an error downstream)
        if (pos < text.size() && text[pos] == 'i' &&
            (pos + 1 >= text.size() || !std::isalnum(static_cast<unsigned char>(text[pos + 1])))) {
            ++pos;
            return make_lit(Complex(0, v));
        }
        return make_lit(Complex(v, 0));
    }
};

// ---- jet arithmetic -----------------------------------------------------

struct Jet {
    Complex v, d1, d2;
};

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void ensure_finite(const Jet& j) {
    if (!finite(j.v) || !finite(j.d1) || !finite(j.d2))
        throw Error(ErrorCode::Overflow, "non-finite intermediate in jet evaluation");
}

Jet jet_mul(const Jet& a, const Jet& b) {
    return {a.v * b.v, a.v * b.d1 + a.d1 * b.v, a.v * b.d2 + 2.0 * a.d1 * b.d1 + a.d2 * b.v};
}

Jet jet_inv(const Jet& b, double num_scale) {
    if (std::abs(b.v) < 1e-12 * (1.0 + num_scale))
        throw Error(ErrorCode::PoleAtPoint, "division by a near-zero denominator");
    const Complex w = 1.0 / b.v;
    const Complex w2 = w * w;
    return {w, -b.d1 * w2, (2.0 * b.d1 * b.d1 * w - b.d2) * w2};
}

Complex cpow_int(Complex base, int n) {
    // n >= 0; exact repeated squaring, with 0^0 = 1
    Complex r = 1.0, b = base;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

Jet jet_pow(const Jet& a, int n) {
    if (n == 0) return {1.0, 0.0, 0.0};
    if (n < 0) return jet_inv(jet_pow(a, -n), 1.0);
    if (n == 1) return a;
    const Complex p2 = cpow_int(a.v, n - 2);
    const Complex p1 = p2 * a.v;
    const Complex p0 = p1 * a.v;
    const double dn = n;
    return {p0, dn * p1 * a.d1, dn * (dn - 1.0) * p2 * a.d1 * a.d1 + dn * p1 * a.d2};
}

Jet eval(const Node& n, Complex z) {
    Jet r;
    switch (n.kind) {
        case Node::Kind::Var: r = {z, 1.0, 0.0}; break;
        case Node::Kind::Lit: r = {n.value, 0.0, 0.0}; break;
        case Node::Kind::Neg: {
            const Jet a = eval(*n.a, z);
            r = {-a.v, -a.d1, -a.d2};
            break;
        }
        case Node::Kind::Add: {
            const Jet a = eval(*n.a, z), b = eval(*n.b, z);
            r = {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
            break;
        }
        case Node::Kind::Sub: {
            const Jet a = eval(*n.a, z), b = eval(*n.b, z);
            r = {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
            break;
        }
        case Node::Kind::Mul: r = jet_mul(eval(*n.a, z), eval(*n.b, z)); break;
        case Node::Kind::Div: {
            const Jet a = eval(*n.a, z), b = eval(*n.b, z);
            r = jet_mul(a, jet_inv(b, std::abs(a.v)));
            break;
        }
        case Node::Kind::Pow: r = jet_pow(eval(*n.a, z), n.exponent); break;
        case Node::Kind::Exp: {
            const Jet a = eval(*n.a, z);
            const Complex e = std::exp(a.v);
            r = {e, e * a.d1, e * (a.d1 * a.d1 + a.d2)};
            break;
        }
    }
    ensure_finite(r);
    return r;
}

// ---- printer ------------------------------------------------------------

int precedence(const Node& n) {
    switch (n.kind) {
        case Node::Kind::Add:
        case Node::Kind::Sub: return 1;
        case Node::Kind::Mul:
        case Node::Kind::Div: return 2;
        case Node::Kind::Neg: return 3;
        case Node::Kind::Pow: return 4;
        default: return 5;
    }
}

std::string format_real(double v) {
    // shortest representation that round-trips
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string format_lit(Complex c) {
    if (c.imag() == 0) return format_real(c.real());
    if (c.real() == 0) return format_real(c.imag()) + "i";
    const std::string im = format_real(std::abs(c.imag())) + "i";
    return "(" + format_real(c.real()) + (c.imag() < 0 ? "-" : "+") + im + ")";
}

void print(const Node& n, std::string& out) {
    auto child = [&out](const Node& c, bool parens) {
        if (parens) out += '(';
        print(c, out);
        if (parens) out += ')';
    };
    const int p = precedence(n);
    switch (n.kind) {
        case Node::Kind::Var: out += 'z'; break;
        case Node::Kind::Lit: out += format_lit(n.value); break;
        case Node::Kind::Neg:
            out += '-';
            child(*n.a, precedence(*n.a) < p);
            break;
        case Node::Kind::Add:
        case Node::Kind::Sub:
            child(*n.a, precedence(*n.a) < p);
            out += (n.kind == Node::Kind::Add ? " + " : " - ");
            child(*n.b, precedence(*n.b) <= p);
            break;
        case Node::Kind::Mul:
        case Node::Kind::Div:
            child(*n.a, precedence(*n.a) < p);
            out += (n.kind == Node::Kind::Mul ? "*" : "/");
            child(*n.b, precedence(*n.b) <= p);
            break;
        case Node::Kind::Pow:
            child(*n.a, precedence(*n.a) < 5);
            out += '^';
            if (n.exponent < 0) out += '-';
            out += std::to_string(std::abs(n.exponent));
            break;
        case Node::Kind::Exp:
            out += "exp(";
            print(*n.a, out);
            out += ')';
            break;
    }
}

NodePtr subst(const NodePtr& n, const NodePtr& inner) {
    if (n->kind == Node::Kind::Var) return inner;
    auto m = std::make_shared<Node>(*n);
    if (n->a) m->a = subst(n->a, inner);
    if (n->b) m->b = subst(n->b, inner);
    return m;
}

} // namespace
} // namespace detail

HoloExpr parse_holomorphic(const std::string& text) {
    detail::Parser parser(text);
    auto root = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size())
        parser.fail("trailing input", parser.pos);
    return HoloExpr(std::move(root));
}

ComplexJet2 eval_jet2(const HoloExpr& expr, Complex z) {
    if (expr.empty()) throw Error(ErrorCode::SyntaxError, "empty expression");
    const detail::Jet j = detail::eval(*expr.root_, z);
    return {j.v, j.d1, j.d2};
}

std::string pretty_print(const HoloExpr& expr) {
    if (expr.empty()) return "";
    std::string out;
    detail::print(*expr.root_, out);
    return out;
}

HoloExpr substitute(const HoloExpr& outer, const HoloExpr& inner) {
    if (outer.empty() || inner.empty())
        throw Error(ErrorCode::SyntaxError, "substitute on empty expression");
    return HoloExpr(detail::subst(outer.root_, inner.root_));
}

HoloExpr mobius_expr(Complex a, Complex b, Complex c, Complex d) {
    using detail::Node;
    auto z = detail::make_var();
    auto num = detail::make_binary(Node::Kind::Add,
                                   detail::make_binary(Node::Kind::Mul, detail::make_lit(a), z),
                                   detail::make_lit(b));
    if (c == 0.0 && d == Complex(1, 0)) return HoloExpr(std::move(num));
    auto den = detail::make_binary(Node::Kind::Add,
                                   detail::make_binary(Node::Kind::Mul, detail::make_lit(c), z),
                                   detail::make_lit(d));
    return HoloExpr(detail::make_binary(Node::Kind::Div, std::move(num), std::move(den)));
}

} // namespace bcm
