#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qbr {

using Int = boost::multiprecision::cpp_int;

// Thrown on malformed user-facing input (files, CLI arguments, bad moduli).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

Int gcd_int(Int a, Int b);
Int lcm_int(const Int& a, const Int& b);

// Dense row-major integer matrix with arbitrary-precision entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntMatrix operator*(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const = default;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void add_row(std::size_t dst, std::size_t src, const Int& factor);   // row dst += factor * row src
    void add_col(std::size_t dst, std::size_t src, const Int& factor);
    void negate_row(std::size_t i);

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

// Determinant by fraction-free Gaussian elimination (Bareiss).
Int determinant(const IntMatrix& m);

struct SNFResult {
    IntMatrix U;  // rows x rows, unimodular
    IntMatrix S;  // rows x cols, diagonal, nonnegative, divisibility chain
    IntMatrix V;  // cols x cols, unimodular
};

// U * M * V = S. Deterministic: pivots are the minimal-absolute-value nonzero
// entry of the working submatrix, ties broken by (row, col).
SNFResult smith_normal_form(const IntMatrix& m);

// Finite abelian group in invariant-factor form d1 | d2 | ... | dk, each >= 2.
// The trivial group is the empty list.
class AbelianGroup {
public:
    AbelianGroup() = default;

    // Normalizes an arbitrary list of cyclic orders (>= 1) into chained
    // invariant factors; unit factors are dropped.
    static AbelianGroup from_orders(std::vector<Int> orders);

    const std::vector<Int>& invariant_factors() const { return factors_; }
    bool is_trivial() const { return factors_.empty(); }
    Int order() const;
    Int exponent() const;  // 1 for the trivial group

    bool operator==(const AbelianGroup& rhs) const = default;

    // "(Z/2)^2 + Z/4" style rendering; "0" for the trivial group.
    std::string to_string() const;

private:
    std::vector<Int> factors_;
};

// Structure of S = { x in (+)_i Z/m_i : C x == 0 (mod N) }. Constraint columns
// are coefficients of the embedded variables: column j must already carry the
// N/m_j scaling. Throws input_error when some m_i does not divide N.
AbelianGroup solution_group(const std::vector<Int>& moduli, const IntMatrix& constraints, const Int& modulus);

// (+)_i Z/gcd(d_i, n), unit factors dropped.
AbelianGroup torsion_part(const AbelianGroup& g, const Int& n);

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);

// Structure of ((+)_i Z/ambient_i) / <generators>. Each generator has one
// entry per ambient factor. Throws input_error on a dimension mismatch.
AbelianGroup quotient_group(const std::vector<Int>& ambient_orders,
                            const std::vector<std::vector<Int>>& subgroup_gens);

}  // namespace qbr
