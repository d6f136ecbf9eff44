#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qbr/solver.hpp"

using namespace qbr;

namespace {

std::vector<Int> factors(std::vector<long long> v) { return std::vector<Int>(v.begin(), v.end()); }

struct CaseBuilder {
    StratificationCase c;
    CaseBuilder(std::string label, std::vector<Int> orders) {
        c.label = std::move(label);
        c.group = {"G", std::move(orders)};
        c.standard_form = true;
    }
    CaseBuilder& stratum(std::string id, long long stab, long long gq) {
        c.strata.push_back({std::move(id), Int(stab), Int(gq), std::nullopt, std::nullopt});
        return *this;
    }
    CaseBuilder& point(std::string id, std::vector<std::string> strata) {
        PointOrbit p{std::move(id), {}};
        for (auto& s : strata) p.incidences.push_back({std::move(s), 1});
        c.points.push_back(std::move(p));
        return *this;
    }
    CaseBuilder& pair_points(const std::string& a, const std::string& b, int n) {
        for (int i = 0; i < n; ++i) point(a + "_" + b + "_" + std::to_string(i), {a, b});
        return *this;
    }
};

StratificationCase case_3_36() {
    CaseBuilder b("3.36", factors({3, 6}));
    b.stratum("xi1", 2, 0).stratum("xi2", 3, 0).stratum("xi3", 3, 0).pair_points("xi2", "xi3", 2);
    return b.c;
}

StratificationCase case_2_G44() {
    CaseBuilder b("2.G44", factors({2, 4, 4}));
    b.stratum("xi1", 2, 0).stratum("xi2", 4, 0).stratum("xi3", 4, 0).stratum("xi4", 4, 0);
    b.pair_points("xi1", "xi2", 1).pair_points("xi1", "xi3", 1).pair_points("xi1", "xi4", 1);
    b.pair_points("xi2", "xi3", 1).pair_points("xi2", "xi4", 1).pair_points("xi3", "xi4", 1);
    return b.c;
}

}  // namespace

TEST_CASE("build_system shapes") {
    SUBCASE("two curves through two points plus an isolated stratum") {
        SolutionSystem sys = build_system(case_3_36());
        CHECK(sys.variables.size() == 4);  // xi2, xi3 at both points; xi1 carries none
        CHECK(sys.modulus == 6);
        CHECK(sys.constraints.rows() == 3 + 2);
        // Embedded coefficients: order-3 variables scale by 6/3 = 2.
        for (std::size_t j = 0; j < 4; ++j) {
            Int colsum = 0;
            for (std::size_t i = 0; i < sys.constraints.rows(); ++i) colsum += sys.constraints.at(i, j);
            CHECK(colsum == 4);  // one stratum row + one point row, each with coefficient 2
        }
    }
    SUBCASE("no strata") {
        CaseBuilder b("empty", factors({2}));
        SolutionSystem sys = build_system(b.c);
        CHECK(sys.variables.empty());
        CHECK(sys.modulus == 1);
    }
    SUBCASE("mixed orders count") {
        SolutionSystem sys = build_system(case_2_G44());
        CHECK(sys.variables.size() == 12);  // three incidences per stratum
        CHECK(sys.modulus == 4);
        CHECK(sys.constraints.rows() == 4 + 6);
    }
    SUBCASE("invalid case is rejected with its violations") {
        CaseBuilder b("bad", factors({2}));
        b.stratum("xi1", 1, 0);
        CHECK_THROWS_AS(build_system(b.c), input_error);
    }
}

TEST_CASE("solve reproduces the worked examples") {
    SUBCASE("two order-3 curves through two points") {
        BrauerResult r = solve(case_3_36());
        CHECK(r.total.invariant_factors() == factors({3}));
        CHECK(r.unramified_part.is_trivial());
    }
    SUBCASE("single genus-3 quotient, order 2") {
        CaseBuilder b("2.G", factors({2}));
        b.stratum("xi1", 2, 3);
        BrauerResult r = solve(b.c);
        CHECK(r.total.invariant_factors() == factors({2, 2, 2, 2, 2, 2}));
        CHECK(r.ramified_part.is_trivial());
    }
    SUBCASE("three order-4 curves and the order-2 curve in general position") {
        BrauerResult r = solve(case_2_G44());
        CHECK(r.total.invariant_factors() == factors({2, 2, 4}));
    }
    SUBCASE("two rulings of each order on a quadric") {
        CaseBuilder b("0.mn-4-6", factors({4, 6}));
        b.stratum("xi1", 4, 0).stratum("xi2", 4, 0).stratum("xi3", 6, 0).stratum("xi4", 6, 0);
        b.pair_points("xi1", "xi3", 1).pair_points("xi1", "xi4", 1);
        b.pair_points("xi2", "xi3", 1).pair_points("xi2", "xi4", 1);
        BrauerResult r = solve(b.c);
        CHECK(r.total.invariant_factors() == factors({2}));  // gcd(4, 6)
    }
}

TEST_CASE("per-n parts agree with torsion of the total") {
    for (const StratificationCase& c : {case_3_36(), case_2_G44()}) {
        BrauerResult r = solve(c);
        CHECK(!r.per_n.empty());
        for (const auto& [n, g] : r.per_n) CHECK(g == torsion_part(r.total, n));
    }
}

TEST_CASE("brute force oracle") {
    SUBCASE("81-state enumeration") {
        CHECK(brute_force(case_3_36(), 10000000).invariant_factors() == factors({3}));
        CHECK(brute_force_state_count(case_3_36()) == 81);
    }
    SUBCASE("empty case") {
        CaseBuilder b("empty", factors({2}));
        CHECK(brute_force(b.c, 100).is_trivial());
    }
    SUBCASE("degree-4 del Pezzo with three coordinate involutions") {
        CaseBuilder b("4.222", factors({2, 2, 2}));
        b.stratum("xi1", 2, 0).stratum("xi2", 2, 0).stratum("xi3", 2, 0);
        b.pair_points("xi1", "xi2", 2).pair_points("xi1", "xi3", 2).pair_points("xi2", "xi3", 2);
        CHECK(brute_force(b.c, 10000000).invariant_factors() == factors({2, 2, 2, 2}));
        CHECK(brute_force(b.c, 10000000) == solve(b.c).total);
    }
    SUBCASE("cap refusal is deterministic") {
        CHECK_THROWS_AS(brute_force(case_2_G44(), 100), input_error);
    }
    SUBCASE("oracle agrees on a mixed-order case") {
        CHECK(brute_force(case_2_G44(), 10000000) == solve(case_2_G44()).total);
    }
}

TEST_CASE("deleting an unmarked rational stratum never changes the result") {
    auto drop_isolated = [](StratificationCase c) {
        for (auto it = c.strata.begin(); it != c.strata.end(); ++it) {
            bool marked = false;
            for (const auto& p : c.points)
                for (const auto& inc : p.incidences)
                    if (inc.stratum == it->id) marked = true;
            if (!marked && it->quotient_genus == 0) {
                c.strata.erase(it);
                break;
            }
        }
        return c;
    };
    StratificationCase c = case_3_36();
    StratificationCase reduced = drop_isolated(c);
    CHECK(reduced.strata.size() == c.strata.size() - 1);
    CHECK(solve(reduced).total == solve(c).total);
}

TEST_CASE("uniform stabilizer order bounds the exponent") {
    for (long long m : {2, 3, 4, 6}) {
        StratificationCase c = case_2_G44();
        for (auto& s : c.strata) s.stabilizer_order = m;
        BrauerResult r = solve(c);
        CHECK(Int(m) % r.total.exponent() == 0);
    }
}

TEST_CASE("schur multiplier") {
    CHECK(schur_multiplier({"G", factors({4, 6})}).invariant_factors() == factors({2}));
    CHECK(schur_multiplier({"G", factors({2, 2, 2, 2})}).invariant_factors() == factors({2, 2, 2, 2, 2, 2}));
    CHECK(schur_multiplier({"G", factors({7})}).is_trivial());
    CHECK(schur_multiplier({"G", factors({3, 3})}).invariant_factors() == factors({3}));
}

TEST_CASE("amitsur quotient path") {
    SUBCASE("order-2 quotient of the full multiplier") {
        CHECK(brauer_from_amitsur({"G", factors({2, 4})}, {factors({1})}).is_trivial());
    }
    SUBCASE("trivial amitsur group keeps the multiplier") {
        CHECK(brauer_from_amitsur({"G", factors({2, 2, 2})}, {}).invariant_factors() == factors({2, 2, 2}));
    }
    SUBCASE("order-3 quotient") {
        CHECK(brauer_from_amitsur({"G", factors({3, 3})}, {factors({1})}).is_trivial());
    }
    SUBCASE("independent pair of generators in (Z/2)^6") {
        auto g = brauer_from_amitsur({"G", factors({2, 2, 2, 2})},
                                     {factors({1, 0, 0, 0, 0, 0}), factors({0, 1, 0, 0, 0, 0})});
        CHECK(g.invariant_factors() == factors({2, 2, 2, 2}));
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(brauer_from_amitsur({"G", factors({2, 4})}, {factors({1, 0})}), input_error);
    }
}

TEST_CASE("result JSON carries all parts") {
    BrauerResult r = solve(case_2_G44());
    std::string j = render_result_json(r);
    CHECK(j.find("\"label\": \"2.G44\"") != std::string::npos);
    CHECK(j.find("\"total\"") != std::string::npos);
    CHECK(j.find("\"ramified\"") != std::string::npos);
    CHECK(j.find("\"unramified\"") != std::string::npos);
    CHECK(j.find("\"per_n\"") != std::string::npos);
}
