#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbr/poly.hpp"

namespace qbr {

// Simultaneous substitution, applied once. Variables without an image map to
// themselves.
struct ChartMap {
    std::map<std::string, RatFunc> substitutions;
};

// Divisorial valuation v_h on the rational function field, h irreducible.
// Irreducibility is the caller's responsibility and is not checked.
struct Valuation {
    MultiPoly generator;
    std::string main_variable;
};

struct Symbol {
    RatFunc a, b;
};

enum class SquareClass { Trivial, Nontrivial, Unknown };

std::string to_string(SquareClass c);

struct ResidueReport {
    int v_a = 0;
    int v_b = 0;
    RatFunc representative;  // exact image representative, valuation 0
    SquareClass multiplier_square_class = SquareClass::Trivial;
    SquareClass verdict = SquareClass::Unknown;
};

// v(num) - v(den) by repeated exact division by the generator. Throws
// input_error on the zero function or a malformed valuation.
int valuation_of(const RatFunc& f, const Valuation& v);

// Exact simultaneous substitution. Throws input_error when the denominator
// vanishes identically (degenerate chart).
RatFunc substitute(const RatFunc& f, const ChartMap& chart);
RatFunc substitute(const RatFunc& f, const std::vector<ChartMap>& charts);  // applied in order

// v(f) mod 2.
int first_residue(const RatFunc& f, const Valuation& v);

// Degree-2 residue of (a, b): sign (-1)^{v(a)v(b)} times a^{v(b)} b^{-v(a)},
// reduced modulo the generator by pseudo-division in the main variable with
// the leading-coefficient multiplier folded back exactly. The verdict is
// Trivial when the representative is visibly a square times a constant,
// Unknown otherwise (strategies refine it).
ResidueReport residue_symbol(const Symbol& sym, const Valuation& v);

// Exact square-class decision when the generator is linear in its main
// variable (residue field purely transcendental): substitute the solved
// variable, take the squarefree part, Trivial iff it is constant. Throws
// input_error when the generator is not linear.
SquareClass square_class_in_rational_field(const RatFunc& f, const Valuation& v);

// Square class of u in k(t)(sqrt(d)) for univariate u, d: trivial iff u or
// u*d is a square in k(t). Throws input_error when d is a perfect square.
SquareClass square_class_in_quadratic_extension(const RatFunc& u, const MultiPoly& d);

// Checks rep = c * witness^2 (constant c) in the residue field presented by
// eliminating solved_variable from the relation (linear); pass no relation to
// check the identity as it stands.
bool verify_square_witness(const RatFunc& rep, const RatFunc& witness,
                           const std::optional<MultiPoly>& relation, const std::string& solved_variable);

struct SquareStrategy {
    enum class Kind { Auto, Rational, QuadraticExtension, Witness };
    Kind kind = Kind::Auto;

    // quadratic_extension: residue field k(t)(sqrt(d)), t the image of t_def.
    // The discriminant d is derived from the generator by eliminating
    // solve_variable via t_def = t and reading the quadratic in
    // quadratic_variable; d_hint, when given, is cross-checked against it.
    RatFunc t_def;
    std::string solve_variable;
    std::string quadratic_variable;
    std::optional<MultiPoly> d_hint;  // univariate in "t"

    // witness: square certificate for the representative's square-class part.
    RatFunc witness;
    std::optional<MultiPoly> relation;
    std::string solved_variable;
};

struct DivisorCheck {
    std::string id;
    Int stabilizer_order = 1;
    std::vector<ChartMap> charts;
    Valuation valuation;
    SquareStrategy strategy;
};

struct DivisorOutcome {
    std::string id;
    Int stabilizer_order = 1;
    ResidueReport report;
    SquareClass square_class = SquareClass::Unknown;  // after strategy refinement
    bool killed_by_stabilizer = false;
    bool passes = false;
    std::string detail;
};

struct StackCheckReport {
    std::vector<DivisorOutcome> divisors;
    bool certified_in_brauer = false;
    bool certified_nonzero = false;
    bool has_unknown = false;
};

// Runs the full per-divisor verification of |I| * residue = 0 for a Z/2
// symbol class: even stabilizer orders pass outright (killed-by-stabilizer),
// everything else needs a Trivial square-class certificate.
StackCheckReport check_stack_class(const Symbol& sym, const std::vector<DivisorCheck>& divisors);

}  // namespace qbr
