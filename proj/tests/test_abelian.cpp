#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qbr/abelian.hpp"

using namespace qbr;

namespace {

IntMatrix matrix_of(std::size_t rows, std::size_t cols, std::vector<long long> entries) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = entries[i * cols + j];
    return m;
}

std::vector<Int> factors(std::vector<long long> v) { return std::vector<Int>(v.begin(), v.end()); }

void check_snf_contract(const IntMatrix& m) {
    SNFResult r = smith_normal_form(m);
    CHECK(r.U * m * r.V == r.S);
    Int du = determinant(r.U), dv = determinant(r.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    std::size_t nmin = std::min(m.rows(), m.cols());
    bool seen_zero = false;
    for (std::size_t i = 0; i < nmin; ++i) {
        CHECK(r.S.at(i, i) >= 0);
        if (r.S.at(i, i) == 0) seen_zero = true;
        if (i + 1 < nmin && r.S.at(i + 1, i + 1) != 0) {
            CHECK(!seen_zero);  // zeros come after the nonzero chain
            CHECK(r.S.at(i + 1, i + 1) % r.S.at(i, i) == 0);
        }
    }
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) CHECK(r.S.at(i, j) == 0);
}

// Exhaustive enumeration oracle: for each divisor e of N, count the solutions
// killed by e and compare with the profile the invariant factors predict.
void check_solution_group_against_enumeration(const std::vector<Int>& moduli, const IntMatrix& c, const Int& n) {
    AbelianGroup g = solution_group(moduli, c, n);

    std::size_t k = moduli.size();
    std::vector<long long> m(k);
    for (std::size_t i = 0; i < k; ++i) m[i] = static_cast<long long>(moduli[i]);
    long long nn = static_cast<long long>(n);

    std::vector<long long> divisors;
    for (long long e = 1; e <= nn; ++e)
        if (nn % e == 0) divisors.push_back(e);
    std::vector<long long> killed(divisors.size(), 0);

    std::vector<long long> x(k, 0);
    while (true) {
        bool ok = true;
        for (std::size_t r = 0; r < c.rows() && ok; ++r) {
            long long s = 0;
            for (std::size_t j = 0; j < k; ++j) s += static_cast<long long>(c.at(r, j)) * x[j];
            if (s % nn != 0) ok = false;
        }
        if (ok) {
            for (std::size_t d = 0; d < divisors.size(); ++d) {
                bool dead = true;
                for (std::size_t j = 0; j < k && dead; ++j)
                    if ((divisors[d] * x[j]) % m[j] != 0) dead = false;
                if (dead) ++killed[d];
            }
        }
        if (k == 0) break;
        std::size_t i = 0;
        while (i < k && ++x[i] == m[i]) x[i++] = 0;
        if (i == k) break;
    }

    for (std::size_t d = 0; d < divisors.size(); ++d) {
        Int predicted = 1;
        for (const Int& f : g.invariant_factors()) predicted *= gcd_int(f, Int(divisors[d]));
        CHECK(predicted == Int(killed[d]));
    }
}

}  // namespace

TEST_CASE("smith normal form on the stated examples") {
    SUBCASE("identity") {
        IntMatrix m = IntMatrix::identity(2);
        SNFResult r = smith_normal_form(m);
        CHECK(r.S == IntMatrix::identity(2));
    }
    SUBCASE("2x2 with nontrivial chain") {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8.
        IntMatrix m = matrix_of(2, 2, {2, 4, 6, 8});
        SNFResult r = smith_normal_form(m);
        CHECK(r.S.at(0, 0) == 2);
        CHECK(r.S.at(1, 1) == 4);
        check_snf_contract(m);
    }
    SUBCASE("empty matrix") {
        IntMatrix m(0, 0);
        SNFResult r = smith_normal_form(m);
        CHECK(r.S.rows() == 0);
        CHECK(r.S.cols() == 0);
    }
    SUBCASE("zero and rectangular shapes") {
        check_snf_contract(IntMatrix(3, 2));
        check_snf_contract(matrix_of(1, 3, {6, 10, 15}));
        check_snf_contract(matrix_of(3, 1, {4, 6, 0}));
    }
}

TEST_CASE("smith normal form contract on random matrices") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<int> dim(0, 8), entry(-50, 50);
    for (int iter = 0; iter < 80; ++iter) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
        check_snf_contract(m);
    }
}

TEST_CASE("smith normal form is deterministic") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> entry(-9, 9);
    IntMatrix m(5, 4);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
    SNFResult a = smith_normal_form(m), b = smith_normal_form(m);
    CHECK(a.U == b.U);
    CHECK(a.S == b.S);
    CHECK(a.V == b.V);
}

TEST_CASE("abelian group normalization") {
    CHECK(AbelianGroup::from_orders(factors({1, 1})).is_trivial());
    CHECK(AbelianGroup::from_orders(factors({2, 3})).invariant_factors() == factors({6}));
    CHECK(AbelianGroup::from_orders(factors({4, 6})).invariant_factors() == factors({2, 12}));
    CHECK(AbelianGroup::from_orders(factors({2, 2, 4})).invariant_factors() == factors({2, 2, 4}));
    AbelianGroup g = AbelianGroup::from_orders(factors({6, 4}));
    CHECK(g.order() == 24);
    CHECK(g.exponent() == 12);
    CHECK(AbelianGroup().exponent() == 1);
    CHECK(AbelianGroup().to_string() == "0");
    CHECK(AbelianGroup::from_orders(factors({2, 2, 4})).to_string() == "(Z/2)^2 + Z/4");
}

TEST_CASE("solution group on the stated examples") {
    SUBCASE("two rational curves meeting twice, Z/3 coefficients") {
        // a1+a2 = 0, b1+b2 = 0, a1+b1 = 0, a2+b2 = 0 over Z/3.
        IntMatrix c = matrix_of(4, 4,
                                {1, 1, 0, 0,
                                 0, 0, 1, 1,
                                 1, 0, 1, 0,
                                 0, 1, 0, 1});
        AbelianGroup g = solution_group(factors({3, 3, 3, 3}), c, 3);
        CHECK(g.invariant_factors() == factors({3}));
    }
    SUBCASE("no variables") {
        AbelianGroup g = solution_group({}, IntMatrix(0, 0), 1);
        CHECK(g.is_trivial());
    }
    SUBCASE("single parity constraint on four Z/2 variables") {
        IntMatrix c = matrix_of(1, 4, {1, 1, 1, 1});
        AbelianGroup g = solution_group(factors({2, 2, 2, 2}), c, 2);
        CHECK(g.invariant_factors() == factors({2, 2, 2}));
        check_solution_group_against_enumeration(factors({2, 2, 2, 2}), c, 2);
    }
    SUBCASE("embedded mixed moduli") {
        // One Z/2 variable (embedded by 2) and one Z/4 variable tied at a point:
        // 2a + b = 0 mod 4 leaves a free Z/2 choice with b determined.
        IntMatrix c = matrix_of(1, 2, {2, 1});
        AbelianGroup g = solution_group(factors({2, 4}), c, 4);
        CHECK(g.invariant_factors() == factors({2}));
        check_solution_group_against_enumeration(factors({2, 4}), c, 4);
    }
    SUBCASE("modulus not divisible by a variable modulus") {
        CHECK_THROWS_AS(solution_group(factors({3}), IntMatrix(0, 1), 4), input_error);
    }
}

TEST_CASE("solution group matches enumeration on random systems") {
    std::mt19937_64 rng(987654);
    std::uniform_int_distribution<int> nvars(0, 4), nrows(0, 3), mod_pick(0, 3);
    const long long mods[4] = {2, 3, 4, 6};
    for (int iter = 0; iter < 60; ++iter) {
        std::size_t k = nvars(rng), r = nrows(rng);
        std::vector<Int> moduli;
        Int n = 1;
        for (std::size_t i = 0; i < k; ++i) {
            moduli.push_back(mods[mod_pick(rng)]);
            n = lcm_int(n, moduli.back());
        }
        IntMatrix c(r, k);
        std::uniform_int_distribution<int> coeff(0, 3);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < k; ++j) c.at(i, j) = coeff(rng) * (n / moduli[j]);
        check_solution_group_against_enumeration(moduli, c, n);
    }
}

TEST_CASE("torsion part") {
    AbelianGroup g66 = AbelianGroup::from_orders(factors({6, 6}));
    CHECK(torsion_part(g66, 3).invariant_factors() == factors({3, 3}));
    CHECK(torsion_part(g66, 1).is_trivial());
    AbelianGroup g24 = AbelianGroup::from_orders(factors({2, 4}));
    // Elements of order dividing 2 in Z/2 + Z/4: four of them, two factors.
    CHECK(torsion_part(g24, 2).invariant_factors() == factors({2, 2}));
    CHECK(torsion_part(g24, g24.exponent()) == g24);
}

TEST_CASE("direct sum") {
    AbelianGroup z2 = AbelianGroup::from_orders(factors({2}));
    AbelianGroup z3 = AbelianGroup::from_orders(factors({3}));
    CHECK(direct_sum(z2, z3).invariant_factors() == factors({6}));
    AbelianGroup z22 = AbelianGroup::from_orders(factors({2, 2}));
    AbelianGroup z4 = AbelianGroup::from_orders(factors({4}));
    CHECK(direct_sum(z22, z4).invariant_factors() == factors({2, 2, 4}));
    CHECK(direct_sum(AbelianGroup(), z4) == z4);

    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<int> ord(1, 12), len(0, 3);
    for (int iter = 0; iter < 40; ++iter) {
        auto rand_group = [&]() {
            std::vector<Int> f;
            int l = len(rng);
            for (int i = 0; i < l; ++i) f.push_back(ord(rng));
            return AbelianGroup::from_orders(f);
        };
        AbelianGroup a = rand_group(), b = rand_group(), c = rand_group();
        CHECK(direct_sum(a, b) == direct_sum(b, a));
        CHECK(direct_sum(direct_sum(a, b), c) == direct_sum(a, direct_sum(b, c)));
    }
}

TEST_CASE("quotient group") {
    CHECK(quotient_group(factors({2, 2, 2}), {factors({1, 0, 0})}).invariant_factors() == factors({2, 2}));
    CHECK(quotient_group(factors({3}), {factors({1})}).is_trivial());
    CHECK(quotient_group(factors({2, 2, 2, 2, 2, 2}), {}).invariant_factors() == factors({2, 2, 2, 2, 2, 2}));
    CHECK_THROWS_AS(quotient_group(factors({2, 2}), {factors({1})}), input_error);
}
