#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qbr/poly.hpp"

using namespace qbr;

namespace {

const std::vector<std::string> XYZ = {"x", "y", "z"};

MultiPoly P(const std::string& text) { return parse_poly(text, XYZ); }
RatFunc F(const std::string& text) { return parse_ratfunc(text, XYZ); }

MultiPoly random_poly(std::mt19937_64& rng, int max_terms, int max_deg, int max_coeff) {
    std::uniform_int_distribution<int> nterms(1, max_terms), deg(0, max_deg), coeff(-max_coeff, max_coeff);
    MultiPoly p;
    for (int t = 0; t < nterms(rng); ++t) {
        int c = coeff(rng);
        if (c == 0) c = 1;
        MultiPoly term = MultiPoly::constant(c);
        for (const auto& v : XYZ) term = term * MultiPoly::variable(v).pow(deg(rng));
        p = p + term;
    }
    return p;
}

}  // namespace

TEST_CASE("arithmetic and parsing") {
    CHECK(P("x + y") * P("x - y") == P("x^2 - y^2"));
    CHECK(P("(x+y)^3") == P("x^3 + 3*x^2*y + 3*x*y^2 + y^3"));
    CHECK(P("2*x - 2*x").is_zero());
    CHECK(P("- (x - y)") == P("y - x"));
    CHECK(P("7").constant_value() == 7);
    CHECK(P("x*y^2").degree("y") == 2);
    CHECK(P("x*y^2").degree("z") == 0);
    CHECK(P("x*y^2 + z").total_degree() == 3);
    CHECK(F("x/y + y/x") == RatFunc(P("x^2 + y^2"), P("x*y")));
    CHECK(F("1/(x-1) - 1/(x+1)") == RatFunc(P("2"), P("x^2-1")));
    CHECK(F("x^-2") == RatFunc(P("1"), P("x^2")));
    CHECK_THROWS_AS(parse_ratfunc("x + q", XYZ), input_error);
    CHECK_THROWS_AS(parse_ratfunc("x + ", XYZ), input_error);
    CHECK_THROWS_AS(parse_ratfunc("1/(x - x)", XYZ), input_error);
    CHECK_THROWS_AS(parse_poly("1/x", XYZ), input_error);
}

TEST_CASE("rendering is canonical graded-lex") {
    CHECK(P("y + x^2 + 1").to_string() == "x^2 + y + 1");
    CHECK(P("-x").to_string() == "-x");
    CHECK(RatFunc(P("x"), P("-2*y")).to_string() == "(-1/2*x)/(y)");
}

TEST_CASE("exact division") {
    CHECK(*exact_divide(P("x^2 - y^2"), P("x - y")) == P("x + y"));
    CHECK(!exact_divide(P("x^2 + y"), P("x - y")).has_value());
    CHECK(exact_divide(MultiPoly(), P("x"))->is_zero());
    std::mt19937_64 rng(42);
    for (int i = 0; i < 40; ++i) {
        MultiPoly a = random_poly(rng, 3, 3, 5), b = random_poly(rng, 3, 3, 5);
        if (b.is_zero()) continue;
        auto q = exact_divide(a * b, b);
        REQUIRE(q.has_value());
        CHECK(*q == a);
    }
}

TEST_CASE("gcd") {
    CHECK(poly_gcd(P("x^2 - y^2"), P("x^2 + 2*x*y + y^2")) == P("x + y"));
    CHECK(poly_gcd(P("6*x"), P("4*x^2")) == P("x"));
    CHECK(poly_gcd(P("x + 1"), P("y + 1")) == P("1"));
    CHECK(poly_gcd(MultiPoly(), P("-3*x - 3")) == P("x + 1"));
    std::mt19937_64 rng(20240201);
    for (int i = 0; i < 30; ++i) {
        MultiPoly f = random_poly(rng, 2, 2, 4), g = random_poly(rng, 2, 2, 4), h = random_poly(rng, 2, 2, 4);
        if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
        MultiPoly d = poly_gcd(f * h, g * h);
        CHECK(exact_divide(d, poly_gcd(h, d)).has_value());
        CHECK(exact_divide(d, h.primitive_part().second).has_value());  // h | gcd(fh, gh)
        CHECK(exact_divide(f * h, d).has_value());
        CHECK(exact_divide(g * h, d).has_value());
    }
}

TEST_CASE("pseudo remainder") {
    // x^2 reduced by (y x - 1): multiplier y^2, remainder 1.
    PseudoRemainder pr = pseudo_remainder(P("x^2"), P("y*x - 1"), "x");
    CHECK(pr.multiplier_power == 2);
    CHECK(pr.remainder == P("1"));
    // Degree below the divisor: untouched.
    pr = pseudo_remainder(P("y^5"), P("x^2 - y"), "x");
    CHECK(pr.multiplier_power == 0);
    CHECK(pr.remainder == P("y^5"));
}

TEST_CASE("squarefree decomposition and square-class part") {
    auto dec = squarefree_decomposition(P("x^2*(y+1)^3"));
    REQUIRE(dec.size() == 2);
    CHECK(dec[0].first == P("x"));
    CHECK(dec[0].second == 2);
    CHECK(dec[1].first == P("y + 1"));
    CHECK(dec[1].second == 3);

    CHECK(square_class_part(P("x^2*(y+1)^3")) == P("y + 1"));
    CHECK(square_class_part(P("-5*y^2")) == P("1"));
    CHECK(square_class_part(P("12")) == P("1"));
    CHECK(square_class_part(P("x*y")) == P("x*y"));
}

TEST_CASE("square detection up to constants") {
    SUBCASE("perfect square binomial") {
        auto r = is_square_poly(P("(y - z)^2"));
        REQUIRE(r.has_value());
        CHECK(*r * *r == P("(y - z)^2"));
    }
    SUBCASE("negative constant times a square") {
        auto r = is_square_poly(P("-5*y^2"));
        REQUIRE(r.has_value());
        CHECK(*r == P("y"));  // -5 is absorbed into the constant
    }
    SUBCASE("odd degree is never square") {
        CHECK(!is_square_poly(P("y^3")).has_value());
        CHECK(!is_square_poly(P("x^2 + y")).has_value());
    }
    SUBCASE("exact square root keeps the constant") {
        auto r = exact_sqrt(P("9*x^2*y^4"));
        REQUIRE(r.has_value());
        CHECK(*r * *r == P("9*x^2*y^4"));
        CHECK(!exact_sqrt(P("-x^2")).has_value());
        CHECK(!exact_sqrt(P("2*x^2")).has_value());
    }
}

TEST_CASE("random square round-trip") {
    std::mt19937_64 rng(777);
    for (int i = 0; i < 40; ++i) {
        MultiPoly s = random_poly(rng, 3, 3, 6);
        if (s.is_zero()) continue;
        MultiPoly sq = s * s;
        auto root = is_square_poly(sq);
        REQUIRE(root.has_value());
        CHECK(*root * *root == sq.primitive_part().second * MultiPoly::constant(1));
        auto exact = exact_sqrt(sq);
        REQUIRE(exact.has_value());
        CHECK(*exact * *exact == sq);
    }
}

TEST_CASE("ratfunc reduction invariants") {
    RatFunc f(P("2*x^2 - 2*y^2"), P("4*x + 4*y"));
    CHECK(f.num() == P("1/2*x - 1/2*y"));
    CHECK(f.den() == P("1"));
    RatFunc g(P("x"), P("-2*y"));
    CHECK(g.den() == P("y"));  // denominator primitive with positive lead
    CHECK(g.num() == P("-1/2*x"));
    CHECK(RatFunc(MultiPoly(), P("x")).is_zero());
    CHECK_THROWS_AS(RatFunc(P("x"), MultiPoly()), input_error);
    CHECK(F("x/y").pow(-2) == F("y^2/x^2"));
}
