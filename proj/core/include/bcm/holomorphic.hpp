#ifndef BCM_HOLOMORPHIC_HPP
#define BCM_HOLOMORPHIC_HPP

#include <complex>
#include <memory>
#include <string>

#include "bcm/errors.hpp"

namespace bcm {

using Complex = std::complex<double>;

/// Value and first two complex derivatives of a holomorphic map at a point.
struct ComplexJet2 {
    Complex f0;
    Complex f1;
    Complex f2;
};

namespace detail {
struct Node;
}

/// Immutable expression tree for a holomorphic map of one variable z.
/// Supports +, -, *, /, integer powers, unary -, exp, and complex literals;
/// cheap to copy, safe to evaluate concurrently.
class HoloExpr {
public:
    HoloExpr() = default;
    bool empty() const { return root_ == nullptr; }

private:
    explicit HoloExpr(std::shared_ptr<const detail::Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const detail::Node> root_;

    friend HoloExpr parse_holomorphic(const std::string&);
    friend ComplexJet2 eval_jet2(const HoloExpr&, Complex);
    friend std::string pretty_print(const HoloExpr&);
    friend HoloExpr substitute(const HoloExpr&, const HoloExpr&);
    friend HoloExpr mobius_expr(Complex, Complex, Complex, Complex);
};

/// Parse an expression in the variable z.
/// Grammar (see docs/expression-grammar.md): standard precedence
/// ^ > unary- > *,/ > +,-; parentheses; implicit multiplication ("2z");
/// complex literals 2, 3i, 1+2i; the function exp.
/// Throws SyntaxError (with byte offset) or UnsupportedFunction.
HoloExpr parse_holomorphic(const std::string& text);

/// Evaluate (h(z), h'(z), h''(z)) by forward jet arithmetic.
/// Throws PoleAtPoint when a division node has a near-zero denominator,
/// Overflow on non-finite intermediates.
ComplexJet2 eval_jet2(const HoloExpr& expr, Complex z);

/// Canonical printer; parse . pretty_print is the identity on trees, so
/// pretty_print . parse is a fixed point on strings.
std::string pretty_print(const HoloExpr& expr);

/// Replace the variable z of outer by the expression inner (precomposition
/// outer . inner when inner is read as a map of z).
HoloExpr substitute(const HoloExpr& outer, const HoloExpr& inner);

/// The Moebius map (a z + b)/(c z + d) as an expression.
HoloExpr mobius_expr(Complex a, Complex b, Complex c, Complex d);

} // namespace bcm

#endif
