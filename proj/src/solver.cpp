#include "qbr/solver.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace qbr {

namespace {

AbelianGroup unramified_summands(const StratificationCase& c) {
    std::vector<Int> orders;
    for (const auto& s : c.strata) {
        std::size_t copies = 2 * static_cast<std::size_t>(s.quotient_genus);
        for (std::size_t i = 0; i < copies; ++i) orders.push_back(s.stabilizer_order);
    }
    return AbelianGroup::from_orders(std::move(orders));
}

void require_valid(const StratificationCase& c) {
    auto violations = validate_case(c);
    if (violations.empty()) return;
    std::ostringstream os;
    os << "case '" << c.label << "' rejected:";
    for (const auto& v : violations) os << "\n  [" << v.code << "] " << v.message;
    throw input_error(os.str());
}

}  // namespace

SolutionSystem build_system(const StratificationCase& c) {
    require_valid(c);

    SolutionSystem sys;
    sys.modulus = 1;
    for (const auto& s : c.strata) sys.modulus = lcm_int(sys.modulus, s.stabilizer_order);

    std::map<std::string, Int> stab;
    std::map<std::string, std::size_t> stratum_row;
    for (std::size_t i = 0; i < c.strata.size(); ++i) {
        stab[c.strata[i].id] = c.strata[i].stabilizer_order;
        stratum_row[c.strata[i].id] = i;
    }

    // Variables ordered stratum-major, points in declaration order.
    struct Entry {
        std::size_t var;
        std::size_t point_row;
        Int multiplicity;
    };
    std::vector<Entry> entries;
    for (const auto& s : c.strata) {
        for (std::size_t p = 0; p < c.points.size(); ++p) {
            for (const auto& inc : c.points[p].incidences) {
                if (inc.stratum != s.id) continue;
                entries.push_back({sys.variables.size(), p, inc.multiplicity});
                sys.variables.push_back({s.id, c.points[p].id, s.stabilizer_order});
            }
        }
    }

    sys.constraints = IntMatrix(c.strata.size() + c.points.size(), sys.variables.size());
    for (const auto& e : entries) {
        const auto& var = sys.variables[e.var];
        Int coeff = e.multiplicity * (sys.modulus / var.modulus);
        sys.constraints.at(stratum_row[var.stratum], e.var) += coeff;
        sys.constraints.at(c.strata.size() + e.point_row, e.var) += coeff;
    }
    return sys;
}

BrauerResult solve(const StratificationCase& c) {
    SolutionSystem sys = build_system(c);
    std::vector<Int> moduli;
    for (const auto& v : sys.variables) moduli.push_back(v.modulus);

    BrauerResult r;
    r.label = c.label;
    r.ramified_part = solution_group(moduli, sys.constraints, sys.modulus);
    r.unramified_part = unramified_summands(c);
    r.total = direct_sum(r.ramified_part, r.unramified_part);
    for (const auto& s : c.strata) {
        if (!r.per_n.count(s.stabilizer_order))
            r.per_n[s.stabilizer_order] = torsion_part(r.total, s.stabilizer_order);
    }
    return r;
}

Int brute_force_state_count(const StratificationCase& c) {
    SolutionSystem sys = build_system(c);
    Int states = 1;
    for (const auto& v : sys.variables) states *= v.modulus;
    return states;
}

namespace {

// Multiset of prime-power cyclic orders from the counts #{x : order(x) = o}.
std::vector<Int> orders_from_profile(const std::map<std::int64_t, std::int64_t>& count) {
    std::int64_t exponent = 1;
    for (const auto& [o, n] : count) exponent = std::lcm(exponent, o);

    std::vector<Int> parts;
    std::int64_t rem = exponent;
    for (std::int64_t p = 2; rem > 1; ++p) {
        if (rem % p != 0) continue;
        int cap = 0;
        while (rem % p == 0) {
            rem /= p;
            ++cap;
        }
        // killed[j] = N_{p^j} = #{x : p^j x = 0}; a_j = log_p(N_{p^j}/N_{p^(j-1)})
        // counts the cyclic p-factors of exponent >= j.
        std::vector<std::int64_t> killed(cap + 1, 0);
        std::int64_t pj = 1;
        for (int j = 0; j <= cap; ++j) {
            for (const auto& [o, cnt] : count)
                if (pj % o == 0) killed[j] += cnt;
            if (j < cap) pj *= p;
        }
        std::vector<std::int64_t> a(cap + 2, 0);
        for (int j = 1; j <= cap; ++j) {
            std::int64_t ratio = killed[j] / killed[j - 1];
            while (ratio > 1) {
                if (ratio % p != 0) throw std::logic_error("brute_force: order profile is not a p-group profile");
                ratio /= p;
                ++a[j];
            }
        }
        for (int j = 1; j <= cap; ++j) {
            Int pw = 1;
            for (int t = 0; t < j; ++t) pw *= p;
            for (std::int64_t t = 0; t < a[j] - a[j + 1]; ++t) parts.push_back(pw);
        }
    }
    return parts;
}

}  // namespace

AbelianGroup brute_force(const StratificationCase& c, const Int& cap) {
    SolutionSystem sys = build_system(c);
    Int states = 1;
    for (const auto& v : sys.variables) states *= v.modulus;
    if (states > cap)
        throw input_error("brute_force: state count " + states.str() + " exceeds cap " + cap.str());

    const std::size_t k = sys.variables.size();
    const std::int64_t n64 = static_cast<std::int64_t>(sys.modulus);
    std::vector<std::int64_t> mods(k);
    for (std::size_t i = 0; i < k; ++i) mods[i] = static_cast<std::int64_t>(sys.variables[i].modulus);

    const std::size_t rows = sys.constraints.rows();
    std::vector<std::vector<std::int64_t>> coeff(rows, std::vector<std::int64_t>(k));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t j = 0; j < k; ++j)
            coeff[r][j] = static_cast<std::int64_t>(sys.constraints.at(r, j) % sys.modulus);

    std::vector<std::int64_t> x(k, 0), sums(rows, 0);
    std::map<std::int64_t, std::int64_t> count;

    auto record = [&]() {
        for (std::size_t r = 0; r < rows; ++r)
            if (sums[r] % n64 != 0) return;
        std::int64_t order = 1;
        for (std::size_t i = 0; i < k; ++i) order = std::lcm(order, mods[i] / std::gcd(mods[i], x[i]));
        ++count[order];
    };

    record();
    // Mixed-radix odometer with incremental row sums.
    while (true) {
        std::size_t i = 0;
        while (i < k) {
            ++x[i];
            if (x[i] < mods[i]) {
                for (std::size_t r = 0; r < rows; ++r) sums[r] += coeff[r][i];
                break;
            }
            x[i] = 0;
            for (std::size_t r = 0; r < rows; ++r) sums[r] -= coeff[r][i] * (mods[i] - 1);
            ++i;
        }
        if (i == k) break;
        record();
    }

    AbelianGroup ramified = AbelianGroup::from_orders(orders_from_profile(count));
    return direct_sum(ramified, unramified_summands(c));
}

AbelianGroup schur_multiplier(const GroupSpec& group) {
    return AbelianGroup::from_orders(schur_basis_orders(group));
}

std::vector<Int> schur_basis_orders(const GroupSpec& group) {
    std::vector<Int> orders;
    for (std::size_t i = 0; i < group.cyclic_orders.size(); ++i)
        for (std::size_t j = i + 1; j < group.cyclic_orders.size(); ++j) {
            Int g = gcd_int(group.cyclic_orders[i], group.cyclic_orders[j]);
            if (g > 1) orders.push_back(g);
        }
    return orders;
}

AbelianGroup brauer_from_amitsur(const GroupSpec& group, const std::vector<std::vector<Int>>& amitsur_gens) {
    std::vector<Int> ambient = schur_basis_orders(group);
    for (const auto& gen : amitsur_gens)
        if (gen.size() != ambient.size())
            throw input_error("brauer_from_amitsur: generator dimension " + std::to_string(gen.size()) +
                              " does not match Schur multiplier rank " + std::to_string(ambient.size()));
    return quotient_group(ambient, amitsur_gens);
}

std::string render_result_json(const BrauerResult& r) {
    nlohmann::json j;
    auto factors = [](const AbelianGroup& g) {
        nlohmann::json arr = nlohmann::json::array();
        for (const Int& d : g.invariant_factors()) arr.push_back(static_cast<long long>(d));
        return arr;
    };
    j["label"] = r.label;
    j["total"] = factors(r.total);
    j["ramified"] = factors(r.ramified_part);
    j["unramified"] = factors(r.unramified_part);
    j["per_n"] = nlohmann::json::object();
    for (const auto& [n, g] : r.per_n) j["per_n"][n.str()] = factors(g);
    return j.dump(2) + "\n";
}

}  // namespace qbr
