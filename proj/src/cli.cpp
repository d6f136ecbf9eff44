#include "qbr/cli.hpp"

#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qbr/catalog.hpp"
#include "qbr/scenario.hpp"
#include "qbr/solver.hpp"

namespace qbr {

int cmd_compute(const std::string& case_path, bool as_json, std::ostream& out, std::ostream& err) {
    StratificationCase c;
    try {
        c = load_case_file(case_path);
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    auto violations = validate_case(c);
    if (!violations.empty()) {
        err << "case '" << c.label << "' is invalid:\n";
        for (const auto& v : violations) err << "  [" << v.code << "] " << v.message << "\n";
        return exit_input_error;
    }
    BrauerResult r = solve(c);
    if (as_json) {
        out << render_result_json(r);
    } else {
        out << "case " << r.label << " (group " << c.group.name << ")\n";
        out << "  Br        = " << r.total.to_string() << "\n";
        out << "  ramified  = " << r.ramified_part.to_string() << "\n";
        out << "  unramified= " << r.unramified_part.to_string() << "\n";
        for (const auto& [n, g] : r.per_n) out << "  " << n << "-torsion = " << g.to_string() << "\n";
    }
    return exit_ok;
}

int cmd_verify_catalog(const std::string& catalog_dir, const std::string& scenarios_dir, const std::string& filter,
                       const Int& oracle_cap, bool as_json, std::ostream& out, std::ostream& err) {
    VerificationReport report;
    try {
        auto entries = scan_catalog(catalog_dir, scenarios_dir);
        report = verify_catalog(entries, filter, oracle_cap);
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    out << (as_json ? render_report_json(report) : render_report_table(report));
    return report.all_match ? exit_ok : exit_mismatch;
}

int cmd_residue(const std::string& scenario_path, bool as_json, bool allow_unknown, std::ostream& out,
                std::ostream& err) {
    Scenario sc;
    StackCheckReport rep;
    try {
        sc = load_scenario_file(scenario_path);
        rep = run_scenario(sc);
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    if (as_json) {
        out << render_stack_report_json(sc, rep);
    } else {
        out << "scenario " << sc.name << "\n";
        for (const auto& o : rep.divisors) {
            out << "  " << o.id << ": v(a)=" << o.report.v_a << " v(b)=" << o.report.v_b << " |I|="
                << o.stabilizer_order << " residue " << to_string(o.square_class)
                << (o.killed_by_stabilizer ? " [killed-by-stabilizer]" : "") << (o.passes ? "" : " [FAILS]") << "\n";
            out << "      representative: " << o.report.representative.to_string() << "\n";
            if (!o.detail.empty()) out << "      " << o.detail << "\n";
        }
        out << "class " << (rep.certified_in_brauer ? "certified in Br" : "NOT certified in Br") << "; "
            << (rep.certified_nonzero ? "certified nonzero" : "no nonzero certificate") << "\n";
    }
    bool hard_failure = false;
    for (const auto& o : rep.divisors)
        if (!o.killed_by_stabilizer && o.square_class == SquareClass::Nontrivial) hard_failure = true;
    if (hard_failure) {
        for (const auto& o : rep.divisors)
            if (!o.passes) err << "unramifiedness fails at divisor '" << o.id << "'\n";
        return exit_mismatch;
    }
    if (rep.has_unknown && !allow_unknown) {
        for (const auto& o : rep.divisors)
            if (!o.killed_by_stabilizer && o.square_class == SquareClass::Unknown)
                err << "undetermined square class at divisor '" << o.id << "'\n";
        return exit_mismatch;
    }
    return exit_ok;
}

namespace {

std::vector<Int> parse_orders_csv(const std::string& csv) {
    std::vector<Int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw input_error("empty entry in order list");
        out.push_back(Int(item));
        if (out.back() < 1) throw input_error("cyclic order must be >= 1");
    }
    if (out.empty()) throw input_error("no cyclic orders given");
    return out;
}

std::vector<std::vector<Int>> parse_gen_spec(const std::string& spec) {
    std::vector<std::vector<Int>> out;
    if (spec.empty()) return out;
    std::stringstream ss(spec);
    std::string vec;
    while (std::getline(ss, vec, ';')) {
        std::vector<Int> gen;
        std::stringstream vs(vec);
        std::string item;
        while (std::getline(vs, item, ',')) gen.push_back(Int(item));
        out.push_back(std::move(gen));
    }
    return out;
}

}  // namespace

int cmd_schur(const std::string& orders_csv, const std::string& am_spec, bool as_json, std::ostream& out,
              std::ostream& err) {
    try {
        GroupSpec g;
        g.cyclic_orders = parse_orders_csv(orders_csv);
        g.name = "G";
        auto gens = parse_gen_spec(am_spec);
        AbelianGroup h2 = schur_multiplier(g);
        AbelianGroup br = brauer_from_amitsur(g, gens);
        if (as_json) {
            nlohmann::json j;
            auto jh2 = nlohmann::json::array();
            for (const Int& d : h2.invariant_factors()) jh2.push_back(static_cast<long long>(d));
            j["schur_multiplier"] = jh2;
            auto fbr = nlohmann::json::array();
            for (const Int& d : br.invariant_factors()) fbr.push_back(static_cast<long long>(d));
            j["brauer"] = fbr;
            out << j.dump(2) << "\n";
        } else {
            out << "H^2(G, C^x) = " << h2.to_string() << "\n";
            out << "Br([X/G])   = " << br.to_string() << " (quotient by " << gens.size() << " Amitsur generator"
                << (gens.size() == 1 ? "" : "s") << ")\n";
        }
        return exit_ok;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
}

}  // namespace qbr
