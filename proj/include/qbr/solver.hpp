#pragma once

#include <map>
#include <string>
#include <vector>

#include "qbr/abelian.hpp"
#include "qbr/strat.hpp"

namespace qbr {

// Residue-cancellation congruence system of a stratification case. One
// variable per (stratum, incident point) pair, valued in Z/m with
// m = stabilizer order, embedded into Z/N by the N/m scaling. Constraint
// rows: one degree-zero row per stratum, one cancellation row per point.
struct SolutionSystem {
    struct Variable {
        std::string stratum;
        std::string point;
        Int modulus;
    };
    std::vector<Variable> variables;
    Int modulus = 1;        // N = lcm of stabilizer orders; 1 when no strata
    IntMatrix constraints;  // coefficients of the embedded variables
};

struct BrauerResult {
    std::string label;
    AbelianGroup total;
    AbelianGroup ramified_part;
    AbelianGroup unramified_part;
    std::map<Int, AbelianGroup> per_n;  // n -> n-torsion, for each stabilizer order present
};

// Throws input_error (with the violation list in the message) unless
// validate_case is empty.
SolutionSystem build_system(const StratificationCase& c);

BrauerResult solve(const StratificationCase& c);

// Independent oracle: enumerates every residue assignment, filters by the
// constraints, and recovers the group structure from order-profile counts.
// Refuses (input_error) when the state count exceeds cap.
AbelianGroup brute_force(const StratificationCase& c, const Int& cap);

// Number of states brute_force would enumerate.
Int brute_force_state_count(const StratificationCase& c);

// H^2(G, C^x) = (+)_{i<j} Z/gcd(n_i, n_j) for G = (+)_i Z/n_i.
AbelianGroup schur_multiplier(const GroupSpec& group);

// Coordinates of the canonical basis of the Schur multiplier: the pairs
// (i, j), i < j, with gcd(n_i, n_j) > 1, in lexicographic order.
std::vector<Int> schur_basis_orders(const GroupSpec& group);

// schur_multiplier(group) / <amitsur_gens>, generators written in the
// canonical basis returned by schur_basis_orders.
AbelianGroup brauer_from_amitsur(const GroupSpec& group, const std::vector<std::vector<Int>>& amitsur_gens);

std::string render_result_json(const BrauerResult& r);

}  // namespace qbr
