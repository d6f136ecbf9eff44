#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qbr/abelian.hpp"

namespace qbr {

using Rat = boost::multiprecision::cpp_rational;

// Sparse multivariate polynomial with exact rational coefficients. Variables
// are kept sorted by name and pruned when unused, so equal polynomials compare
// equal structurally. Terms are ordered graded-lexicographically.
class MultiPoly {
public:
    struct GrlexLess {
        bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
    };
    using TermMap = std::map<std::vector<int>, Rat, GrlexLess>;

    MultiPoly() = default;  // zero
    static MultiPoly constant(const Rat& c);
    static MultiPoly variable(const std::string& name);

    const std::vector<std::string>& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return vars_.empty(); }
    Rat constant_value() const;  // requires is_constant

    int degree(const std::string& var) const;
    int total_degree() const;  // -1 for the zero polynomial

    MultiPoly operator+(const MultiPoly& rhs) const;
    MultiPoly operator-(const MultiPoly& rhs) const;
    MultiPoly operator*(const MultiPoly& rhs) const;
    MultiPoly operator-() const;
    bool operator==(const MultiPoly& rhs) const;

    MultiPoly pow(unsigned e) const;
    MultiPoly derivative(const std::string& var) const;

    // Coefficients as polynomials in the remaining variables; index = exponent
    // of var. Returns {*this} when var is absent.
    std::vector<MultiPoly> coefficients_in(const std::string& var) const;
    static MultiPoly assemble(const std::string& var, const std::vector<MultiPoly>& coeffs);

    // P = scale * primitive, primitive with coprime integer coefficients and
    // positive leading coefficient. Zero stays zero with scale 1.
    std::pair<Rat, MultiPoly> primitive_part() const;

    std::string to_string() const;

private:
    std::vector<std::string> vars_;
    TermMap terms_;  // exponent vectors sized to vars_

    void prune();
    friend MultiPoly align_to(const MultiPoly& p, const std::vector<std::string>& vars);
};

// Exact quotient, or nullopt when den does not divide num. den != 0.
std::optional<MultiPoly> exact_divide(const MultiPoly& num, const MultiPoly& den);

// GCD by primitive pseudo-remainder sequences; result is integer-primitive
// with positive leading coefficient (1 for coprime inputs).
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

// Pseudo-remainder of a by b in the given variable: lc(b)^k a = q b + rem.
struct PseudoRemainder {
    MultiPoly remainder;
    int multiplier_power = 0;  // k
};
PseudoRemainder pseudo_remainder(const MultiPoly& a, const MultiPoly& b, const std::string& var);

// Squarefree decomposition c * prod A_i^{e_i} (Musser), A_i primitive,
// squarefree, pairwise coprime, nonconstant.
std::vector<std::pair<MultiPoly, int>> squarefree_decomposition(const MultiPoly& p);

// Product of the odd-exponent squarefree factors: the canonical square-class
// representative over an algebraically closed base (constants are squares).
// Returns 1 for nonzero constants; must not be called on zero.
MultiPoly square_class_part(const MultiPoly& p);

// Root s with s^2 = c*p for some nonzero rational c, if one exists.
std::optional<MultiPoly> is_square_poly(const MultiPoly& p);

// Root s with s^2 = p exactly.
std::optional<MultiPoly> exact_sqrt(const MultiPoly& p);

// Reduced fraction of polynomials: numerator and denominator coprime, the
// denominator integer-primitive with positive leading coefficient.
class RatFunc {
public:
    RatFunc() : num_(), den_(MultiPoly::constant(1)) {}  // zero
    RatFunc(MultiPoly num, MultiPoly den);               // throws input_error on zero denominator
    static RatFunc from_poly(MultiPoly p) { return RatFunc(std::move(p), MultiPoly::constant(1)); }
    static RatFunc constant(const Rat& c) { return from_poly(MultiPoly::constant(c)); }
    static RatFunc variable(const std::string& name) { return from_poly(MultiPoly::variable(name)); }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const { return num_.constant_value() / den_.constant_value(); }

    RatFunc operator+(const RatFunc& rhs) const;
    RatFunc operator-(const RatFunc& rhs) const;
    RatFunc operator*(const RatFunc& rhs) const;
    RatFunc operator/(const RatFunc& rhs) const;  // throws input_error on division by zero
    RatFunc operator-() const;
    bool operator==(const RatFunc& rhs) const;

    RatFunc pow(int e) const;  // negative exponents invert

    std::string to_string() const;

private:
    MultiPoly num_, den_;
};

// Recursive-descent parser for the scenario expression grammar: integers,
// declared variables, + - * / ^ and parentheses. Multiplication is explicit.
RatFunc parse_ratfunc(const std::string& text, const std::vector<std::string>& variables);

// parse_ratfunc restricted to polynomial results (denominator must reduce to
// a constant).
MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& variables);

}  // namespace qbr
