#include "qbr/residue.hpp"

#include <algorithm>
#include <sstream>

namespace qbr {

std::string to_string(SquareClass c) {
    switch (c) {
        case SquareClass::Trivial: return "trivial";
        case SquareClass::Nontrivial: return "nontrivial";
        default: return "unknown";
    }
}

namespace {

void validate_valuation(const Valuation& v) {
    if (v.generator.is_zero() || v.generator.is_constant())
        throw input_error("valuation: generator must be nonconstant");
    if (v.generator.degree(v.main_variable) < 1)
        throw input_error("valuation: main variable '" + v.main_variable + "' does not occur in the generator");
}

int poly_valuation(const MultiPoly& p, const MultiPoly& gen) {
    int v = 0;
    MultiPoly cur = p;
    while (true) {
        auto q = exact_divide(cur, gen);
        if (!q) return v;
        cur = std::move(*q);
        ++v;
    }
}

MultiPoly substitute_poly(const MultiPoly& p, const std::map<std::string, RatFunc>& images, RatFunc& out_den);

RatFunc substitute_ratfunc(const RatFunc& f, const std::map<std::string, RatFunc>& images) {
    // Evaluate numerator and denominator termwise with memoized powers.
    auto eval = [&images](const MultiPoly& p) {
        RatFunc acc;
        std::map<std::string, std::vector<RatFunc>> powers;  // var -> [1, x, x^2, ...]
        for (const auto& [exps, coeff] : p.terms()) {
            RatFunc term = RatFunc::constant(coeff);
            for (std::size_t i = 0; i < p.variables().size(); ++i) {
                int e = exps[i];
                if (e == 0) continue;
                const std::string& var = p.variables()[i];
                auto& pw = powers[var];
                if (pw.empty()) {
                    auto it = images.find(var);
                    pw.push_back(RatFunc::constant(1));
                    pw.push_back(it != images.end() ? it->second : RatFunc::variable(var));
                }
                while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * pw[1]);
                term = term * pw[e];
            }
            acc = acc + term;
        }
        return acc;
    };
    RatFunc num = eval(f.num());
    RatFunc den = eval(f.den());
    if (den.is_zero()) throw input_error("substitute: denominator vanishes identically (degenerate chart)");
    return num / den;
}

}  // namespace

int valuation_of(const RatFunc& f, const Valuation& v) {
    validate_valuation(v);
    if (f.is_zero()) throw input_error("valuation_of: the zero function has no valuation");
    return poly_valuation(f.num(), v.generator) - poly_valuation(f.den(), v.generator);
}

RatFunc substitute(const RatFunc& f, const ChartMap& chart) {
    return substitute_ratfunc(f, chart.substitutions);
}

RatFunc substitute(const RatFunc& f, const std::vector<ChartMap>& charts) {
    RatFunc cur = f;
    for (const auto& c : charts) cur = substitute(cur, c);
    return cur;
}

int first_residue(const RatFunc& f, const Valuation& v) {
    int val = valuation_of(f, v);
    return ((val % 2) + 2) % 2;
}

namespace {

// P == remainder / lc^k modulo the generator, with deg_main(remainder) below
// the generator's. Returns the exact pair.
std::pair<MultiPoly, int> reduce_mod(const MultiPoly& p, const Valuation& v) {
    if (p.degree(v.main_variable) < v.generator.degree(v.main_variable)) return {p, 0};
    PseudoRemainder pr = pseudo_remainder(p, v.generator, v.main_variable);
    return {pr.remainder, pr.multiplier_power};
}

}  // namespace

ResidueReport residue_symbol(const Symbol& sym, const Valuation& v) {
    validate_valuation(v);
    if (sym.a.is_zero() || sym.b.is_zero()) throw input_error("residue_symbol: symbol entries must be nonzero");

    ResidueReport out;
    out.v_a = valuation_of(sym.a, v);
    out.v_b = valuation_of(sym.b, v);

    RatFunc u = sym.a.pow(out.v_b) * sym.b.pow(-out.v_a);
    if ((out.v_a % 2 != 0) && (out.v_b % 2 != 0)) u = -u;
    // v(u) = v_b v_a - v_a v_b = 0 by construction.

    auto [rn, kn] = reduce_mod(u.num(), v);
    auto [rd, kd] = reduce_mod(u.den(), v);

    // u == (rn / rd) * lc^(kd - kn) modulo the generator; lc is a unit there,
    // so the multiplier can be folded back exactly.
    MultiPoly lc = v.generator.coefficients_in(v.main_variable).back();
    int net = kd - kn;
    out.representative = RatFunc(rn, rd) * RatFunc::from_poly(lc).pow(net);

    if (net % 2 == 0 || is_square_poly(lc))
        out.multiplier_square_class = SquareClass::Trivial;
    else
        out.multiplier_square_class = SquareClass::Unknown;

    MultiPoly cls = out.representative.num() * out.representative.den();
    out.verdict = is_square_poly(cls) ? SquareClass::Trivial : SquareClass::Unknown;
    return out;
}

SquareClass square_class_in_rational_field(const RatFunc& f, const Valuation& v) {
    validate_valuation(v);
    if (v.generator.degree(v.main_variable) != 1)
        throw input_error("square_class_in_rational_field: generator must be linear in its main variable");
    auto coeffs = v.generator.coefficients_in(v.main_variable);
    RatFunc solved = RatFunc(-coeffs[0], coeffs[1]);
    ChartMap chart;
    chart.substitutions[v.main_variable] = solved;
    RatFunc image = substitute(f, chart);
    if (image.is_zero()) throw input_error("square_class_in_rational_field: function vanishes on the divisor");
    MultiPoly s = square_class_part(image.num() * image.den());
    return s.is_constant() ? SquareClass::Trivial : SquareClass::Nontrivial;
}

SquareClass square_class_in_quadratic_extension(const RatFunc& u, const MultiPoly& d) {
    if (d.is_zero() || d.is_constant())
        throw input_error("square_class_in_quadratic_extension: d must be nonconstant");
    if (d.variables().size() != 1)
        throw input_error("square_class_in_quadratic_extension: d must be univariate");
    if (is_square_poly(d))
        throw input_error("square_class_in_quadratic_extension: d is a perfect square");
    if (u.is_zero()) throw input_error("square_class_in_quadratic_extension: u must be nonzero");
    for (const auto& var : u.num().variables())
        if (var != d.variables()[0])
            throw input_error("square_class_in_quadratic_extension: u must live in k(" + d.variables()[0] + ")");
    for (const auto& var : u.den().variables())
        if (var != d.variables()[0])
            throw input_error("square_class_in_quadratic_extension: u must live in k(" + d.variables()[0] + ")");

    MultiPoly ucls = square_class_part(u.num() * u.den());
    if (ucls.is_constant()) return SquareClass::Trivial;
    // The kernel of k(t)^x/2 -> k(t)(sqrt d)^x/2 is generated by d.
    if (square_class_part(ucls * d).is_constant()) return SquareClass::Trivial;
    return SquareClass::Nontrivial;
}

bool verify_square_witness(const RatFunc& rep, const RatFunc& witness,
                           const std::optional<MultiPoly>& relation, const std::string& solved_variable) {
    RatFunc r = rep, w = witness;
    if (relation) {
        if (relation->degree(solved_variable) != 1)
            throw input_error("verify_square_witness: relation must be linear in the solved variable");
        auto coeffs = relation->coefficients_in(solved_variable);
        ChartMap chart;
        chart.substitutions[solved_variable] = RatFunc(-coeffs[0], coeffs[1]);
        r = substitute(r, chart);
        w = substitute(w, chart);
    }
    if (w.is_zero() || r.is_zero()) return false;
    RatFunc ratio = r / (w * w);
    return ratio.is_constant() && !ratio.is_zero();
}

namespace {

// True when a and b differ by a square in the ambient rational function
// field (sufficient for equality of residue classes).
bool same_class(const MultiPoly& a, const MultiPoly& b) {
    return square_class_part(a * b).is_constant();
}

SquareClass refine_quadratic_extension(const ResidueReport& rr, const Valuation& val, const SquareStrategy& st,
                                       std::string& detail) {
    const std::string tname = "t";
    MultiPoly tpoly = MultiPoly::variable(tname);

    // Solve t_def = t for solve_variable (linear elimination).
    MultiPoly lin = st.t_def.num() - tpoly * st.t_def.den();
    if (lin.degree(st.solve_variable) != 1)
        throw input_error("quadratic_extension: t_def is not linear in '" + st.solve_variable + "'");
    auto lc = lin.coefficients_in(st.solve_variable);
    ChartMap elim;
    elim.substitutions[st.solve_variable] = RatFunc(-lc[0], lc[1]);

    // The generator becomes a quadratic in quadratic_variable over k(t).
    RatFunc gsub = substitute(RatFunc::from_poly(val.generator), elim);
    MultiPoly rel = gsub.num();
    if (rel.degree(st.quadratic_variable) != 2)
        throw input_error("quadratic_extension: eliminated generator is not quadratic in '" + st.quadratic_variable + "'");
    auto qc = rel.coefficients_in(st.quadratic_variable);
    MultiPoly disc = qc[1] * qc[1] - MultiPoly::constant(4) * qc[2] * qc[0];
    if (disc.is_zero()) throw input_error("quadratic_extension: degenerate (square) residue-field presentation");
    for (const auto& var : disc.variables())
        if (var != tname)
            throw input_error("quadratic_extension: discriminant is not univariate in t (found '" + var + "')");
    MultiPoly dcls = square_class_part(disc);
    if (dcls.is_constant())
        throw input_error("quadratic_extension: discriminant is a square; presentation is not a quadratic extension");
    if (st.d_hint && !same_class(dcls, *st.d_hint))
        throw input_error("quadratic_extension: supplied d disagrees with the derived discriminant");

    // Express the representative's class through t and the kernel class d.
    MultiPoly s = square_class_part(rr.representative.num() * rr.representative.den());
    MultiPoly tcls = square_class_part(st.t_def.num() * st.t_def.den());
    RatFunc d_of_tdef = substitute(RatFunc::from_poly(dcls), ChartMap{{{tname, st.t_def}}});
    MultiPoly dc = square_class_part(d_of_tdef.num() * d_of_tdef.den());

    if (s.is_constant()) {
        detail = "representative is a square";
        return SquareClass::Trivial;
    }
    if (same_class(s, dc)) {
        detail = "representative matches the kernel class d";
        return SquareClass::Trivial;
    }
    bool is_t = same_class(s, tcls);
    bool is_td = same_class(s, square_class_part(tcls * dc));
    if (!is_t && !is_td) {
        detail = "representative not expressible through t";
        return SquareClass::Unknown;
    }
    // class(t * d) = class(t) in k(t)(sqrt d); decide t there.
    SquareClass cls = square_class_in_quadratic_extension(RatFunc::from_poly(tpoly), dcls);
    detail = std::string(is_t ? "representative ~ t" : "representative ~ t*d") +
             " with d = " + dcls.to_string();
    return cls;
}

}  // namespace

StackCheckReport check_stack_class(const Symbol& sym, const std::vector<DivisorCheck>& divisors) {
    StackCheckReport out;
    for (const auto& dc : divisors) {
        DivisorOutcome o;
        o.id = dc.id;
        o.stabilizer_order = dc.stabilizer_order;
        o.killed_by_stabilizer = (dc.stabilizer_order % 2 == 0);

        Symbol local{substitute(sym.a, dc.charts), substitute(sym.b, dc.charts)};
        o.report = residue_symbol(local, dc.valuation);
        o.square_class = o.report.verdict;
        if (o.square_class == SquareClass::Trivial) o.detail = "representative is a square";

        if (o.square_class == SquareClass::Unknown) {
            switch (dc.strategy.kind) {
                case SquareStrategy::Kind::Rational:
                    o.square_class = square_class_in_rational_field(o.report.representative, dc.valuation);
                    o.detail = "rational residue field, squarefree-part decision";
                    break;
                case SquareStrategy::Kind::QuadraticExtension:
                    o.square_class = refine_quadratic_extension(o.report, dc.valuation, dc.strategy, o.detail);
                    break;
                case SquareStrategy::Kind::Witness: {
                    MultiPoly s = square_class_part(o.report.representative.num() * o.report.representative.den());
                    bool ok = verify_square_witness(RatFunc::from_poly(s), dc.strategy.witness,
                                                    dc.strategy.relation, dc.strategy.solved_variable);
                    o.square_class = ok ? SquareClass::Trivial : SquareClass::Unknown;
                    o.detail = ok ? "witness certifies the square" : "witness failed to certify";
                    break;
                }
                case SquareStrategy::Kind::Auto:
                    if (dc.valuation.generator.degree(dc.valuation.main_variable) == 1) {
                        o.square_class = square_class_in_rational_field(o.report.representative, dc.valuation);
                        o.detail = "rational residue field, squarefree-part decision";
                    } else {
                        o.detail = "no applicable certificate";
                    }
                    break;
            }
        }

        o.passes = o.killed_by_stabilizer || o.square_class == SquareClass::Trivial;
        out.divisors.push_back(std::move(o));
    }

    out.certified_in_brauer = true;
    for (const auto& o : out.divisors) {
        if (!o.passes) out.certified_in_brauer = false;
        if (!o.killed_by_stabilizer && o.square_class == SquareClass::Unknown) out.has_unknown = true;
        if (o.square_class == SquareClass::Nontrivial) out.certified_nonzero = true;
    }
    if (out.has_unknown) out.certified_in_brauer = false;
    return out;
}

}  // namespace qbr
