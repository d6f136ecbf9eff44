#include "qbr/abelian.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qbr {

Int gcd_int(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    Int g = gcd_int(a, b);
    Int l = (a / g) * b;
    return l < 0 ? -l : l;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::logic_error("IntMatrix: dimension mismatch in product");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& lik = at(i, k);
            if (lik == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) += lik * rhs.at(k, j);
        }
    return out;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Int& factor) {
    for (std::size_t k = 0; k < cols_; ++k) at(dst, k) += factor * at(src, k);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Int& factor) {
    for (std::size_t k = 0; k < rows_; ++k) at(k, dst) += factor * at(k, src);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < cols_; ++j) os << at(i, j) << (j + 1 < cols_ ? " " : "");
        os << (i + 1 < rows_ ? ";\n" : "]");
    }
    if (rows_ == 0) os << "[]";
    return os.str();
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::logic_error("determinant: matrix not square");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

namespace {

// True when row t and column t are zero outside the pivot position.
bool pivot_isolated(const IntMatrix& s, std::size_t t) {
    for (std::size_t i = t + 1; i < s.rows(); ++i)
        if (s.at(i, t) != 0) return false;
    for (std::size_t j = t + 1; j < s.cols(); ++j)
        if (s.at(t, j) != 0) return false;
    return true;
}

// Minimal-absolute-value nonzero entry of the submatrix starting at (t, t);
// ties resolved by smallest (row, col). Returns false when all zero.
bool find_pivot(const IntMatrix& s, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best = 0;
    for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j) {
            const Int& v = s.at(i, j);
            if (v == 0) continue;
            Int av = v < 0 ? -v : v;
            if (!found || av < best) {
                found = true;
                best = av;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace

SNFResult smith_normal_form(const IntMatrix& m) {
    SNFResult r;
    r.U = IntMatrix::identity(m.rows());
    r.V = IntMatrix::identity(m.cols());
    r.S = m;
    IntMatrix& s = r.S;

    std::size_t nmin = std::min(m.rows(), m.cols());
    for (std::size_t t = 0; t < nmin; ++t) {
        std::size_t pi, pj;
        if (!find_pivot(s, t, pi, pj)) break;  // remaining submatrix is zero
        s.swap_rows(t, pi);
        r.U.swap_rows(t, pi);
        s.swap_cols(t, pj);
        r.V.swap_cols(t, pj);

        while (true) {
            // Reduce column t and row t against the pivot.
            for (std::size_t i = t + 1; i < s.rows(); ++i) {
                if (s.at(i, t) == 0) continue;
                Int k = s.at(i, t) / s.at(t, t);
                if (k != 0) {
                    s.add_row(i, t, -k);
                    r.U.add_row(i, t, -k);
                }
            }
            for (std::size_t j = t + 1; j < s.cols(); ++j) {
                if (s.at(t, j) == 0) continue;
                Int k = s.at(t, j) / s.at(t, t);
                if (k != 0) {
                    s.add_col(j, t, -k);
                    r.V.add_col(j, t, -k);
                }
            }
            if (!pivot_isolated(s, t)) {
                // Leftover remainders are smaller than the pivot; re-pivot.
                find_pivot(s, t, pi, pj);
                s.swap_rows(t, pi);
                r.U.swap_rows(t, pi);
                s.swap_cols(t, pj);
                r.V.swap_cols(t, pj);
                continue;
            }
            // Pivot must divide every entry of the trailing submatrix.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < s.rows() && divides_all; ++i)
                for (std::size_t j = t + 1; j < s.cols() && divides_all; ++j)
                    if (s.at(i, j) % s.at(t, t) != 0) {
                        s.add_row(t, i, 1);
                        r.U.add_row(t, i, 1);
                        divides_all = false;
                    }
            if (divides_all) break;
        }
        if (s.at(t, t) < 0) {
            s.negate_row(t);
            r.U.negate_row(t);
        }
    }
    return r;
}

AbelianGroup AbelianGroup::from_orders(std::vector<Int> orders) {
    for (const Int& d : orders)
        if (d < 1) throw std::logic_error("AbelianGroup: cyclic order must be >= 1");
    // SNF of the diagonal matrix re-chains the factors (CRT normalization).
    IntMatrix diag(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) diag.at(i, i) = orders[i];
    IntMatrix s = smith_normal_form(diag).S;
    AbelianGroup g;
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (s.at(i, i) > 1) g.factors_.push_back(s.at(i, i));
    return g;
}

Int AbelianGroup::order() const {
    Int n = 1;
    for (const Int& d : factors_) n *= d;
    return n;
}

Int AbelianGroup::exponent() const { return factors_.empty() ? Int(1) : factors_.back(); }

std::string AbelianGroup::to_string() const {
    if (factors_.empty()) return "0";
    std::ostringstream os;
    std::size_t i = 0;
    bool first = true;
    while (i < factors_.size()) {
        std::size_t j = i;
        while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
        if (!first) os << " + ";
        first = false;
        std::size_t e = j - i;
        if (e == 1)
            os << "Z/" << factors_[i];
        else
            os << "(Z/" << factors_[i] << ")^" << e;
        i = j;
    }
    return os.str();
}

AbelianGroup solution_group(const std::vector<Int>& moduli, const IntMatrix& constraints, const Int& modulus) {
    if (modulus < 1) throw input_error("solution_group: modulus must be >= 1");
    if (constraints.cols() != moduli.size())
        throw input_error("solution_group: constraint column count differs from variable count");
    for (const Int& m : moduli) {
        if (m < 2) throw input_error("solution_group: each variable modulus must be >= 2");
        if (modulus % m != 0) throw input_error("solution_group: modulus not divisible by variable modulus " + m.str());
    }
    std::size_t k = moduli.size();
    std::size_t rrows = constraints.rows();
    if (k == 0) return AbelianGroup();

    // Lattice L = { y : C y == 0 mod N } as the projection of ker [C | -N I].
    IntMatrix kmat(rrows, k + rrows);
    for (std::size_t i = 0; i < rrows; ++i) {
        for (std::size_t j = 0; j < k; ++j) kmat.at(i, j) = constraints.at(i, j);
        kmat.at(i, k + i) = -modulus;
    }
    SNFResult snf = smith_normal_form(kmat);
    std::size_t rank = 0;
    for (std::size_t i = 0; i < std::min(kmat.rows(), kmat.cols()); ++i)
        if (snf.S.at(i, i) != 0) ++rank;
    std::size_t dim = k + rrows - rank;
    if (dim != k) throw std::logic_error("solution_group: unexpected kernel dimension");

    // Basis of L: first k coordinates of the kernel columns of V.
    IntMatrix basis(k, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) basis.at(i, j) = snf.V.at(i, rank + j);

    // Express the sublattice (+) m_i Z in that basis: A = basis^{-1} diag(m).
    SNFResult bs = smith_normal_form(basis);
    IntMatrix t(k, k);  // U_B * diag(m)
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) t.at(i, j) = bs.U.at(i, j) * moduli[j];
    for (std::size_t i = 0; i < k; ++i) {
        const Int& d = bs.S.at(i, i);
        if (d == 0) throw std::logic_error("solution_group: lattice basis is singular");
        for (std::size_t j = 0; j < k; ++j) {
            if (t.at(i, j) % d != 0) throw std::logic_error("solution_group: sublattice not contained in L");
            t.at(i, j) /= d;
        }
    }
    IntMatrix rel = bs.V * t;

    IntMatrix s = smith_normal_form(rel).S;
    std::vector<Int> orders;
    for (std::size_t i = 0; i < k; ++i) orders.push_back(s.at(i, i));
    return AbelianGroup::from_orders(std::move(orders));
}

AbelianGroup torsion_part(const AbelianGroup& g, const Int& n) {
    if (n < 1) throw input_error("torsion_part: n must be >= 1");
    std::vector<Int> orders;
    for (const Int& d : g.invariant_factors()) orders.push_back(gcd_int(d, n));
    return AbelianGroup::from_orders(std::move(orders));
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<Int> orders = a.invariant_factors();
    const auto& fb = b.invariant_factors();
    orders.insert(orders.end(), fb.begin(), fb.end());
    return AbelianGroup::from_orders(std::move(orders));
}

AbelianGroup quotient_group(const std::vector<Int>& ambient_orders,
                            const std::vector<std::vector<Int>>& subgroup_gens) {
    std::size_t k = ambient_orders.size();
    for (const Int& d : ambient_orders)
        if (d < 1) throw input_error("quotient_group: ambient order must be >= 1");
    for (const auto& gen : subgroup_gens)
        if (gen.size() != k) throw input_error("quotient_group: generator dimension mismatch");
    if (k == 0) return AbelianGroup();

    IntMatrix rel(k + subgroup_gens.size(), k);
    for (std::size_t i = 0; i < k; ++i) rel.at(i, i) = ambient_orders[i];
    for (std::size_t i = 0; i < subgroup_gens.size(); ++i)
        for (std::size_t j = 0; j < k; ++j) rel.at(k + i, j) = subgroup_gens[i][j];

    IntMatrix s = smith_normal_form(rel).S;
    std::vector<Int> orders;
    for (std::size_t i = 0; i < k; ++i) orders.push_back(s.at(i, i));
    return AbelianGroup::from_orders(std::move(orders));
}

}  // namespace qbr
