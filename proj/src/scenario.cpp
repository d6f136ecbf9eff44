#include "qbr/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qbr {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw input_error("unknown field '" + it.key() + "' in " + where);
}

std::string str_field(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_string()) throw input_error(where + ": missing string field '" + key + "'");
    return j[key].get<std::string>();
}

SquareClass parse_class(const std::string& s, const std::string& where) {
    if (s == "trivial") return SquareClass::Trivial;
    if (s == "nontrivial") return SquareClass::Nontrivial;
    if (s == "unknown") return SquareClass::Unknown;
    throw input_error(where + ": bad square-class '" + s + "'");
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw input_error(std::string("scenario file is not valid JSON: ") + e.what());
    }
    reject_unknown(j, {"name", "variables", "symbol", "divisors", "expected"}, "scenario");

    Scenario sc;
    sc.name = str_field(j, "name", "scenario");
    if (!j.contains("variables") || !j["variables"].is_array())
        throw input_error("scenario: missing array field 'variables'");
    for (const auto& v : j["variables"]) {
        if (!v.is_string()) throw input_error("scenario: variables must be strings");
        sc.variables.push_back(v.get<std::string>());
    }

    if (!j.contains("symbol") || !j["symbol"].is_object()) throw input_error("scenario: missing object field 'symbol'");
    reject_unknown(j["symbol"], {"a", "b"}, "symbol");
    sc.symbol.a = parse_ratfunc(str_field(j["symbol"], "a", "symbol"), sc.variables);
    sc.symbol.b = parse_ratfunc(str_field(j["symbol"], "b", "symbol"), sc.variables);

    if (!j.contains("divisors") || !j["divisors"].is_array())
        throw input_error("scenario: missing array field 'divisors'");
    for (const auto& jd : j["divisors"]) {
        reject_unknown(jd, {"id", "stabilizer_order", "charts", "generator", "main_variable", "strategy", "expected"},
                       "divisor");
        ScenarioDivisor d;
        d.check.id = str_field(jd, "id", "divisor");
        if (!jd.contains("stabilizer_order") || !jd["stabilizer_order"].is_number_integer())
            throw input_error("divisor '" + d.check.id + "': missing integer 'stabilizer_order'");
        d.check.stabilizer_order = jd["stabilizer_order"].get<long long>();
        if (jd.contains("charts")) {
            if (!jd["charts"].is_array()) throw input_error("divisor '" + d.check.id + "': 'charts' must be an array");
            for (const auto& jc : jd["charts"]) {
                if (!jc.is_object()) throw input_error("divisor '" + d.check.id + "': chart must be an object");
                ChartMap chart;
                for (auto it = jc.begin(); it != jc.end(); ++it) {
                    if (!it.value().is_string())
                        throw input_error("divisor '" + d.check.id + "': chart image must be a string");
                    chart.substitutions[it.key()] = parse_ratfunc(it.value().get<std::string>(), sc.variables);
                }
                d.check.charts.push_back(std::move(chart));
            }
        }
        d.check.valuation.generator = parse_poly(str_field(jd, "generator", "divisor '" + d.check.id + "'"), sc.variables);
        d.check.valuation.main_variable = str_field(jd, "main_variable", "divisor '" + d.check.id + "'");

        if (jd.contains("strategy")) {
            const json& js = jd["strategy"];
            reject_unknown(js,
                           {"kind", "t_def", "solve_variable", "quadratic_variable", "d", "witness", "relation",
                            "solved_variable"},
                           "strategy");
            std::string kind = str_field(js, "kind", "strategy");
            if (kind == "auto") {
                d.check.strategy.kind = SquareStrategy::Kind::Auto;
            } else if (kind == "rational") {
                d.check.strategy.kind = SquareStrategy::Kind::Rational;
            } else if (kind == "quadratic_extension") {
                d.check.strategy.kind = SquareStrategy::Kind::QuadraticExtension;
                d.check.strategy.t_def = parse_ratfunc(str_field(js, "t_def", "strategy"), sc.variables);
                d.check.strategy.solve_variable = str_field(js, "solve_variable", "strategy");
                d.check.strategy.quadratic_variable = str_field(js, "quadratic_variable", "strategy");
                if (js.contains("d")) d.check.strategy.d_hint = parse_poly(js["d"].get<std::string>(), {"t"});
            } else if (kind == "witness") {
                d.check.strategy.kind = SquareStrategy::Kind::Witness;
                d.check.strategy.witness = parse_ratfunc(str_field(js, "witness", "strategy"), sc.variables);
                if (js.contains("relation"))
                    d.check.strategy.relation = parse_poly(js["relation"].get<std::string>(), sc.variables);
                d.check.strategy.solved_variable = str_field(js, "solved_variable", "strategy");
            } else {
                throw input_error("strategy: unknown kind '" + kind + "'");
            }
        }

        if (jd.contains("expected")) {
            const json& je = jd["expected"];
            reject_unknown(je, {"v_a", "v_b", "verdict", "killed"}, "divisor expected");
            if (je.contains("v_a")) d.expected.v_a = je["v_a"].get<int>();
            if (je.contains("v_b")) d.expected.v_b = je["v_b"].get<int>();
            if (je.contains("verdict")) d.expected.verdict = parse_class(je["verdict"].get<std::string>(), "expected");
            if (je.contains("killed")) d.expected.killed = je["killed"].get<bool>();
        }
        sc.divisors.push_back(std::move(d));
    }

    if (j.contains("expected")) {
        const json& je = j["expected"];
        reject_unknown(je, {"in_brauer", "nonzero"}, "scenario expected");
        if (je.contains("in_brauer")) sc.expected_in_brauer = je["in_brauer"].get<bool>();
        if (je.contains("nonzero")) sc.expected_nonzero = je["nonzero"].get<bool>();
    }
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

StackCheckReport run_scenario(const Scenario& sc) {
    std::vector<DivisorCheck> checks;
    for (const auto& d : sc.divisors) checks.push_back(d.check);
    return check_stack_class(sc.symbol, checks);
}

std::vector<std::string> verify_scenario(const Scenario& sc, const StackCheckReport& report) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < sc.divisors.size(); ++i) {
        const auto& exp = sc.divisors[i].expected;
        const auto& got = report.divisors[i];
        auto complain = [&](const std::string& what) { out.push_back(got.id + ": " + what); };
        if (exp.v_a && *exp.v_a != got.report.v_a)
            complain("v(a) = " + std::to_string(got.report.v_a) + ", expected " + std::to_string(*exp.v_a));
        if (exp.v_b && *exp.v_b != got.report.v_b)
            complain("v(b) = " + std::to_string(got.report.v_b) + ", expected " + std::to_string(*exp.v_b));
        if (exp.verdict && *exp.verdict != got.square_class)
            complain("square class " + to_string(got.square_class) + ", expected " + to_string(*exp.verdict));
        if (exp.killed && *exp.killed != got.killed_by_stabilizer)
            complain(std::string("killed-by-stabilizer ") + (got.killed_by_stabilizer ? "true" : "false") +
                     ", expected " + (*exp.killed ? "true" : "false"));
    }
    if (sc.expected_in_brauer && *sc.expected_in_brauer != report.certified_in_brauer)
        out.push_back("overall: certified_in_brauer " + std::string(report.certified_in_brauer ? "true" : "false") +
                      ", expected " + (*sc.expected_in_brauer ? "true" : "false"));
    if (sc.expected_nonzero && *sc.expected_nonzero != report.certified_nonzero)
        out.push_back("overall: certified_nonzero " + std::string(report.certified_nonzero ? "true" : "false") +
                      ", expected " + (*sc.expected_nonzero ? "true" : "false"));
    return out;
}

std::string render_stack_report_json(const Scenario& sc, const StackCheckReport& report) {
    json j;
    j["name"] = sc.name;
    j["divisors"] = json::array();
    for (const auto& o : report.divisors) {
        json jd;
        jd["id"] = o.id;
        jd["stabilizer_order"] = static_cast<long long>(o.stabilizer_order);
        jd["v_a"] = o.report.v_a;
        jd["v_b"] = o.report.v_b;
        jd["representative"] = o.report.representative.to_string();
        jd["multiplier_square_class"] = to_string(o.report.multiplier_square_class);
        jd["square_class"] = to_string(o.square_class);
        jd["killed_by_stabilizer"] = o.killed_by_stabilizer;
        jd["passes"] = o.passes;
        jd["detail"] = o.detail;
        j["divisors"].push_back(jd);
    }
    j["certified_in_brauer"] = report.certified_in_brauer;
    j["certified_nonzero"] = report.certified_nonzero;
    j["has_unknown"] = report.has_unknown;
    return j.dump(2) + "\n";
}

}  // namespace qbr
