#include "qbr/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace qbr {

using boost::multiprecision::cpp_int;

bool MultiPoly::GrlexLess::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    int da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly MultiPoly::constant(const Rat& c) {
    MultiPoly p;
    if (c != 0) p.terms_[{}] = c;
    return p;
}

MultiPoly MultiPoly::variable(const std::string& name) {
    MultiPoly p;
    p.vars_ = {name};
    p.terms_[{1}] = 1;
    return p;
}

Rat MultiPoly::constant_value() const {
    if (!vars_.empty()) throw std::logic_error("MultiPoly: constant_value on nonconstant polynomial");
    return terms_.empty() ? Rat(0) : terms_.begin()->second;
}

int MultiPoly::degree(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return 0;
    std::size_t idx = it - vars_.begin();
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
    return d;
}

int MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

void MultiPoly::prune() {
    if (vars_.empty()) return;
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) used[i] = true;
    if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
    std::vector<std::string> nv;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (used[i]) nv.push_back(vars_[i]);
    TermMap nt;
    for (const auto& [e, c] : terms_) {
        std::vector<int> ne;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (used[i]) ne.push_back(e[i]);
        nt[std::move(ne)] = c;
    }
    vars_ = std::move(nv);
    terms_ = std::move(nt);
}

// Re-express p over a superset variable list (sorted by name).
MultiPoly align_to(const MultiPoly& p, const std::vector<std::string>& vars) {
    if (p.vars_ == vars) return p;
    MultiPoly out;
    out.vars_ = vars;
    std::vector<int> pos(p.vars_.size());
    for (std::size_t i = 0; i < p.vars_.size(); ++i) {
        auto it = std::lower_bound(vars.begin(), vars.end(), p.vars_[i]);
        pos[i] = static_cast<int>(it - vars.begin());
    }
    for (const auto& [e, c] : p.terms_) {
        std::vector<int> ne(vars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
        out.terms_[std::move(ne)] = c;
    }
    return out;
}

namespace {

std::vector<std::string> merged_vars(const MultiPoly& a, const MultiPoly& b) {
    std::vector<std::string> vars;
    std::set_union(a.variables().begin(), a.variables().end(), b.variables().begin(), b.variables().end(),
                   std::back_inserter(vars));
    return vars;
}

}  // namespace

MultiPoly MultiPoly::operator+(const MultiPoly& rhs) const {
    std::vector<std::string> vars = merged_vars(*this, rhs);
    MultiPoly a = align_to(*this, vars), b = align_to(rhs, vars);
    for (const auto& [e, c] : b.terms_) {
        auto [it, fresh] = a.terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) a.terms_.erase(it);
        }
    }
    a.prune();
    return a;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly p = *this;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
}

MultiPoly MultiPoly::operator-(const MultiPoly& rhs) const { return *this + (-rhs); }

MultiPoly MultiPoly::operator*(const MultiPoly& rhs) const {
    if (is_zero() || rhs.is_zero()) return MultiPoly();
    std::vector<std::string> vars = merged_vars(*this, rhs);
    MultiPoly a = align_to(*this, vars), b = align_to(rhs, vars);
    MultiPoly out;
    out.vars_ = vars;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            std::vector<int> e(vars.size());
            for (std::size_t i = 0; i < vars.size(); ++i) e[i] = ea[i] + eb[i];
            Rat prod = ca * cb;
            auto [it, fresh] = out.terms_.try_emplace(std::move(e), prod);
            if (!fresh) {
                it->second += prod;
                if (it->second == 0) out.terms_.erase(it);
            }
        }
    out.prune();
    return out;
}

bool MultiPoly::operator==(const MultiPoly& rhs) const { return vars_ == rhs.vars_ && terms_ == rhs.terms_; }

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly out = MultiPoly::constant(1);
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1u) out = out * base;
        base = (e >>= 1u) ? base * base : base;
    }
    return out;
}

MultiPoly MultiPoly::derivative(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return MultiPoly();
    std::size_t idx = it - vars_.begin();
    MultiPoly out;
    out.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        std::vector<int> ne = e;
        ne[idx] -= 1;
        out.terms_[std::move(ne)] = c * e[idx];
    }
    out.prune();
    return out;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return {*this};
    std::size_t idx = it - vars_.begin();
    std::vector<MultiPoly> out(static_cast<std::size_t>(degree(var)) + 1);
    for (auto& p : out) p = MultiPoly();
    for (const auto& [e, c] : terms_) {
        MultiPoly& dst = out[e[idx]];
        if (dst.vars_.empty() && dst.terms_.empty()) dst.vars_ = vars_;
        if (dst.vars_ != vars_) dst = align_to(dst, vars_);
        std::vector<int> ne = e;
        ne[idx] = 0;
        dst.terms_[std::move(ne)] = c;
    }
    for (auto& p : out) p.prune();
    return out;
}

MultiPoly MultiPoly::assemble(const std::string& var, const std::vector<MultiPoly>& coeffs) {
    MultiPoly x = MultiPoly::variable(var);
    MultiPoly out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) out = out + coeffs[i] * x.pow(static_cast<unsigned>(i));
    return out;
}

std::pair<Rat, MultiPoly> MultiPoly::primitive_part() const {
    if (is_zero()) return {Rat(1), MultiPoly()};
    cpp_int den_lcm = 1;
    for (const auto& [e, c] : terms_)
        den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(c));
    cpp_int g = 0;
    for (const auto& [e, c] : terms_) {
        cpp_int n = boost::multiprecision::numerator(c) * (den_lcm / boost::multiprecision::denominator(c));
        if (n < 0) n = -n;
        g = boost::multiprecision::gcd(g, n);
    }
    Rat scale(g, den_lcm);
    // Sign: leading (graded-lex greatest) coefficient positive.
    if (terms_.rbegin()->second < 0) scale = -scale;
    MultiPoly prim = *this;
    for (auto& [e, c] : prim.terms_) c /= scale;
    return {scale, prim};
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rat& c = it->second;
        Rat ac = c < 0 ? Rat(-c) : c;
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        first = false;
        bool has_var = false;
        for (int e : it->first)
            if (e > 0) has_var = true;
        if (ac != 1 || !has_var) os << ac.str();
        bool star = ac != 1 || !has_var;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            int e = it->first[i];
            if (e == 0) continue;
            if (star) os << "*";
            star = true;
            os << vars_[i];
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

std::optional<MultiPoly> exact_divide(const MultiPoly& num, const MultiPoly& den) {
    if (den.is_zero()) throw std::logic_error("exact_divide: zero divisor");
    if (num.is_zero()) return MultiPoly();
    if (den.is_constant()) {
        MultiPoly q = num * MultiPoly::constant(Rat(1) / den.constant_value());
        return q;
    }
    std::vector<std::string> vars = merged_vars(num, den);
    MultiPoly d = align_to(den, vars), q;
    MultiPoly r = num;
    const std::vector<int> dexp = d.terms().rbegin()->first;
    const Rat dcoeff = d.terms().rbegin()->second;
    while (!r.is_zero()) {
        MultiPoly ra = align_to(r, vars);
        const std::vector<int>& rexp = ra.terms().rbegin()->first;
        const Rat& rcoeff = ra.terms().rbegin()->second;
        // Leading monomial of r must be divisible by the leading monomial of d;
        // each step strictly lowers the leading monomial, so this terminates.
        MultiPoly t = MultiPoly::constant(rcoeff / dcoeff);
        for (std::size_t i = 0; i < vars.size(); ++i) {
            int e = rexp[i] - dexp[i];
            if (e < 0) return std::nullopt;
            if (e > 0) t = t * MultiPoly::variable(vars[i]).pow(static_cast<unsigned>(e));
        }
        q = q + t;
        r = ra - t * d;
    }
    return q;
}

namespace {

// Content of p seen as a univariate polynomial in var: gcd of the coefficient
// polynomials (in the remaining variables).
MultiPoly content_in(const MultiPoly& p, const std::string& var) {
    MultiPoly g;
    for (const MultiPoly& c : p.coefficients_in(var)) {
        if (c.is_zero()) continue;
        g = poly_gcd(g, c);
        if (g.is_constant()) break;
    }
    return g.is_zero() ? MultiPoly::constant(1) : g;
}

}  // namespace

PseudoRemainder pseudo_remainder(const MultiPoly& a, const MultiPoly& b, const std::string& var) {
    int db = b.degree(var);
    if (b.is_zero() || db == 0) throw std::logic_error("pseudo_remainder: divisor must have positive degree in var");
    MultiPoly lc_b = b.coefficients_in(var).back();
    MultiPoly x = MultiPoly::variable(var);

    PseudoRemainder out;
    out.remainder = a;
    while (!out.remainder.is_zero()) {
        int dr = out.remainder.degree(var);
        if (dr < db) break;
        MultiPoly lc_r = out.remainder.coefficients_in(var).back();
        out.remainder = lc_b * out.remainder - lc_r * x.pow(static_cast<unsigned>(dr - db)) * b;
        ++out.multiplier_power;
    }
    return out;
}

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() && b.is_zero()) return MultiPoly();
    if (a.is_zero()) return b.primitive_part().second;
    if (b.is_zero()) return a.primitive_part().second;
    if (a.is_constant() || b.is_constant()) return MultiPoly::constant(1);

    // Main variable: first (name order) variable occurring in either operand.
    std::vector<std::string> vars = merged_vars(a, b);
    const std::string& x = vars.front();

    MultiPoly ca = content_in(a, x), cb = content_in(b, x);
    MultiPoly cg = poly_gcd(ca, cb);
    MultiPoly pa = *exact_divide(a, ca), pb = *exact_divide(b, cb);

    // An operand free of x is swallowed by its content, leaving a unit.
    if (pa.degree(x) == 0 || pb.degree(x) == 0) return cg.primitive_part().second;

    if (pa.degree(x) < pb.degree(x)) std::swap(pa, pb);
    while (true) {
        PseudoRemainder pr = pseudo_remainder(pa, pb, x);
        if (pr.remainder.is_zero()) break;
        MultiPoly next = *exact_divide(pr.remainder, content_in(pr.remainder, x));
        pa = pb;
        pb = next;
        if (pb.degree(x) == 0) return cg.primitive_part().second;
    }
    return (cg * pb).primitive_part().second;
}

std::vector<std::pair<MultiPoly, int>> squarefree_decomposition(const MultiPoly& p) {
    if (p.is_zero()) throw std::logic_error("squarefree_decomposition: zero polynomial");
    std::vector<std::pair<MultiPoly, int>> out;
    MultiPoly b = p.primitive_part().second;
    if (b.is_constant()) return out;

    // Musser: c = gcd(B, all partials), w = B/c; peel exact-exponent layers.
    MultiPoly c = b;
    for (const std::string& v : b.variables()) c = poly_gcd(c, b.derivative(v));
    MultiPoly w = *exact_divide(b, c);
    int i = 1;
    while (!w.is_constant()) {
        MultiPoly y = poly_gcd(w, c);
        MultiPoly z = *exact_divide(w, y);
        if (!z.is_constant()) out.emplace_back(z.primitive_part().second, i);
        w = y;
        c = *exact_divide(c, y);
        ++i;
    }
    return out;
}

MultiPoly square_class_part(const MultiPoly& p) {
    MultiPoly s = MultiPoly::constant(1);
    for (const auto& [factor, e] : squarefree_decomposition(p))
        if (e % 2 == 1) s = s * factor;
    return s.primitive_part().second;
}

std::optional<MultiPoly> is_square_poly(const MultiPoly& p) {
    if (p.is_zero()) return MultiPoly();
    MultiPoly root = MultiPoly::constant(1);
    for (const auto& [factor, e] : squarefree_decomposition(p)) {
        if (e % 2 == 1) return std::nullopt;
        root = root * factor.pow(static_cast<unsigned>(e / 2));
    }
    return root.primitive_part().second;
}

namespace {

std::optional<Rat> rational_sqrt(const Rat& c) {
    if (c < 0) return std::nullopt;
    if (c == 0) return Rat(0);
    cpp_int n = boost::multiprecision::numerator(c), d = boost::multiprecision::denominator(c);
    cpp_int rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return Rat(rn, rd);
}

}  // namespace

std::optional<MultiPoly> exact_sqrt(const MultiPoly& p) {
    if (p.is_zero()) return MultiPoly();
    auto [scale, prim] = p.primitive_part();
    auto root_prim = is_square_poly(prim);
    if (!root_prim) return std::nullopt;
    // prim = c * root_prim^2 exactly, with c rational; recover c by division.
    auto c = exact_divide(prim, *root_prim * *root_prim);
    if (!c || !c->is_constant()) return std::nullopt;
    auto root_const = rational_sqrt(scale * c->constant_value());
    if (!root_const) return std::nullopt;
    return *root_prim * MultiPoly::constant(*root_const);
}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw input_error("RatFunc: zero denominator");
    if (num_.is_zero()) {
        den_ = MultiPoly::constant(1);
        return;
    }
    MultiPoly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = *exact_divide(num_, g);
        den_ = *exact_divide(den_, g);
    }
    auto [scale, prim] = den_.primitive_part();
    den_ = prim;
    num_ = num_ * MultiPoly::constant(Rat(1) / scale);
}

RatFunc RatFunc::operator+(const RatFunc& rhs) const {
    return RatFunc(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

RatFunc RatFunc::operator-(const RatFunc& rhs) const {
    return RatFunc(num_ * rhs.den_ - rhs.num_ * den_, den_ * rhs.den_);
}

RatFunc RatFunc::operator*(const RatFunc& rhs) const { return RatFunc(num_ * rhs.num_, den_ * rhs.den_); }

RatFunc RatFunc::operator/(const RatFunc& rhs) const {
    if (rhs.is_zero()) throw input_error("RatFunc: division by zero");
    return RatFunc(num_ * rhs.den_, den_ * rhs.num_);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

bool RatFunc::operator==(const RatFunc& rhs) const { return num_ == rhs.num_ && den_ == rhs.den_; }

RatFunc RatFunc::pow(int e) const {
    if (e == 0) return RatFunc::constant(1);
    if (e < 0) {
        if (is_zero()) throw input_error("RatFunc: negative power of zero");
        return RatFunc(den_.pow(static_cast<unsigned>(-e)), num_.pow(static_cast<unsigned>(-e)));
    }
    return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

std::string RatFunc::to_string() const {
    if (den_ == MultiPoly::constant(1)) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

namespace {

struct Parser {
    const std::string& text;
    const std::vector<std::string>& vars;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw input_error("parse error at offset " + std::to_string(pos) + ": " + msg);
    }

    RatFunc parse_expression() {
        RatFunc lhs = parse_term();
        while (true) {
            if (accept('+'))
                lhs = lhs + parse_term();
            else if (accept('-'))
                lhs = lhs - parse_term();
            else
                return lhs;
        }
    }

    RatFunc parse_term() {
        RatFunc lhs = parse_factor();
        while (true) {
            if (accept('*'))
                lhs = lhs * parse_factor();
            else if (accept('/')) {
                RatFunc rhs = parse_factor();
                if (rhs.is_zero()) fail("division by zero");
                lhs = lhs / rhs;
            } else
                return lhs;
        }
    }

    RatFunc parse_factor() {
        if (accept('-')) return -parse_factor();
        if (accept('+')) return parse_factor();
        RatFunc base = parse_atom();
        if (accept('^')) {
            skip_ws();
            bool neg = false;
            if (accept('-')) neg = true;
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) fail("expected integer exponent after '^'");
            int e = std::stoi(text.substr(start, pos - start));
            base = base.pow(neg ? -e : e);
        }
        return base;
    }

    RatFunc parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of expression");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            RatFunc inner = parse_expression();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            return RatFunc::constant(Rat(cpp_int(text.substr(start, pos - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string name = text.substr(start, pos - start);
            if (std::find(vars.begin(), vars.end(), name) == vars.end())
                fail("unknown variable '" + name + "'");
            return RatFunc::variable(name);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

RatFunc parse_ratfunc(const std::string& text, const std::vector<std::string>& variables) {
    Parser p{text, variables};
    RatFunc r = p.parse_expression();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& variables) {
    RatFunc r = parse_ratfunc(text, variables);
    if (!r.den().is_constant())
        throw input_error("expected a polynomial, got a proper fraction: " + text);
    return r.num() * MultiPoly::constant(Rat(1) / r.den().constant_value());
}

}  // namespace qbr
