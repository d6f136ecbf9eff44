#include "qbr/strat.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qbr {

using nlohmann::json;

std::vector<Violation> validate_case(const StratificationCase& c) {
    std::vector<Violation> out;
    auto add = [&out](const std::string& code, const std::string& msg) { out.push_back({code, msg}); };

    if (c.label.empty()) add("missing-label", "case label is empty");
    if (c.group.cyclic_orders.empty()) add("empty-group", "group has no cyclic orders");
    for (const Int& d : c.group.cyclic_orders)
        if (d < 1) add("bad-group-order", "cyclic order " + d.str() + " < 1");

    std::set<std::string> stratum_ids;
    for (const auto& s : c.strata) {
        if (!stratum_ids.insert(s.id).second) add("duplicate-stratum-id", "stratum id '" + s.id + "' repeated");
        if (s.stabilizer_order < 2)
            add("bad-stabilizer-order", "stratum '" + s.id + "' has stabilizer order " + s.stabilizer_order.str() + " < 2");
        if (s.quotient_genus < 0)
            add("negative-quotient-genus", "stratum '" + s.id + "' has negative quotient genus");
        if (s.genus && *s.genus < 0) add("negative-genus", "stratum '" + s.id + "' has negative genus");
    }

    std::set<std::string> point_ids;
    for (const auto& p : c.points) {
        if (!point_ids.insert(p.id).second) add("duplicate-point-id", "point id '" + p.id + "' repeated");
        if (p.incidences.empty()) add("empty-point", "point '" + p.id + "' has no incidences");
        for (const auto& inc : p.incidences) {
            if (!stratum_ids.count(inc.stratum))
                add("dangling-stratum-reference", "point '" + p.id + "' references unknown stratum '" + inc.stratum + "'");
            if (inc.multiplicity < 1)
                add("bad-multiplicity", "point '" + p.id + "' has multiplicity " + inc.multiplicity.str() + " < 1");
        }
    }

    if (!c.standard_form) add("not-standard-form", "case is not marked standard form");
    return out;
}

Int rh_quotient_genus(const Int& genus, const Int& degree, const std::vector<Int>& ramification) {
    if (genus < 0) throw input_error("rh_quotient_genus: genus must be >= 0");
    if (degree < 1) throw input_error("rh_quotient_genus: degree must be >= 1");
    Int ram = 0;
    for (const Int& e : ramification) {
        if (e < 2) throw input_error("rh_quotient_genus: ramification index must be >= 2");
        ram += e - 1;
    }
    // 2g - 2 = d(2g' - 2) + ram
    Int num = 2 * genus - 2 - ram + 2 * degree;
    if (num % (2 * degree) != 0)
        throw input_error("rh_quotient_genus: inconsistent ramification (non-integral quotient genus)");
    Int gq = num / (2 * degree);
    if (gq < 0) throw input_error("rh_quotient_genus: inconsistent ramification (negative quotient genus)");
    return gq;
}

namespace {

Int json_to_int(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw input_error("expected integer at " + where);
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw input_error("unknown field '" + it.key() + "' in " + where);
}

std::vector<Int> int_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw input_error("expected array at " + where);
    std::vector<Int> out;
    for (const auto& v : j) out.push_back(json_to_int(v, where));
    return out;
}

}  // namespace

StratificationCase parse_case(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw input_error(std::string("case file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw input_error("case file root must be an object");
    reject_unknown(j, {"label", "group", "strata", "points", "standard_form", "expected_brauer", "notes"}, "case");

    StratificationCase c;
    if (!j.contains("label") || !j["label"].is_string()) throw input_error("case: missing string field 'label'");
    c.label = j["label"].get<std::string>();

    if (!j.contains("group") || !j["group"].is_object()) throw input_error("case: missing object field 'group'");
    const json& g = j["group"];
    reject_unknown(g, {"name", "cyclic_orders"}, "group");
    if (!g.contains("name") || !g["name"].is_string()) throw input_error("group: missing string field 'name'");
    c.group.name = g["name"].get<std::string>();
    if (!g.contains("cyclic_orders")) throw input_error("group: missing field 'cyclic_orders'");
    c.group.cyclic_orders = int_list(g["cyclic_orders"], "group.cyclic_orders");

    if (!j.contains("strata") || !j["strata"].is_array()) throw input_error("case: missing array field 'strata'");
    for (const auto& js : j["strata"]) {
        reject_unknown(js, {"id", "stabilizer_order", "quotient_genus", "genus", "label"}, "stratum");
        Stratum s;
        if (!js.contains("id") || !js["id"].is_string()) throw input_error("stratum: missing string field 'id'");
        s.id = js["id"].get<std::string>();
        if (!js.contains("stabilizer_order")) throw input_error("stratum '" + s.id + "': missing 'stabilizer_order'");
        s.stabilizer_order = json_to_int(js["stabilizer_order"], "stratum.stabilizer_order");
        if (!js.contains("quotient_genus")) throw input_error("stratum '" + s.id + "': missing 'quotient_genus'");
        s.quotient_genus = json_to_int(js["quotient_genus"], "stratum.quotient_genus");
        if (js.contains("genus")) s.genus = json_to_int(js["genus"], "stratum.genus");
        if (js.contains("label")) {
            if (!js["label"].is_string()) throw input_error("stratum '" + s.id + "': 'label' must be a string");
            s.label = js["label"].get<std::string>();
        }
        c.strata.push_back(std::move(s));
    }

    if (!j.contains("points") || !j["points"].is_array()) throw input_error("case: missing array field 'points'");
    for (const auto& jp : j["points"]) {
        reject_unknown(jp, {"id", "incidences"}, "point");
        PointOrbit p;
        if (!jp.contains("id") || !jp["id"].is_string()) throw input_error("point: missing string field 'id'");
        p.id = jp["id"].get<std::string>();
        if (!jp.contains("incidences") || !jp["incidences"].is_array())
            throw input_error("point '" + p.id + "': missing array field 'incidences'");
        for (const auto& ji : jp["incidences"]) {
            reject_unknown(ji, {"stratum", "multiplicity"}, "incidence");
            Incidence inc;
            if (!ji.contains("stratum") || !ji["stratum"].is_string())
                throw input_error("incidence in point '" + p.id + "': missing string field 'stratum'");
            inc.stratum = ji["stratum"].get<std::string>();
            if (!ji.contains("multiplicity"))
                throw input_error("incidence in point '" + p.id + "': missing 'multiplicity'");
            inc.multiplicity = json_to_int(ji["multiplicity"], "incidence.multiplicity");
            p.incidences.push_back(std::move(inc));
        }
        c.points.push_back(std::move(p));
    }

    if (!j.contains("standard_form") || !j["standard_form"].is_boolean())
        throw input_error("case: missing boolean field 'standard_form'");
    c.standard_form = j["standard_form"].get<bool>();

    if (j.contains("expected_brauer"))
        c.expected_brauer = AbelianGroup::from_orders(int_list(j["expected_brauer"], "expected_brauer"));
    if (j.contains("notes")) {
        if (!j["notes"].is_string()) throw input_error("case: 'notes' must be a string");
        c.notes = j["notes"].get<std::string>();
    }
    return c;
}

namespace {

json int_to_json(const Int& v) {
    // Catalog values fit in 64 bits; keep numbers as numbers in the files.
    return json(static_cast<long long>(v));
}

}  // namespace

std::string render_case(const StratificationCase& c) {
    json j;
    j["label"] = c.label;
    j["group"]["name"] = c.group.name;
    json orders = json::array();
    for (const Int& d : c.group.cyclic_orders) orders.push_back(int_to_json(d));
    j["group"]["cyclic_orders"] = orders;

    j["strata"] = json::array();
    for (const auto& s : c.strata) {
        json js;
        js["id"] = s.id;
        js["stabilizer_order"] = int_to_json(s.stabilizer_order);
        js["quotient_genus"] = int_to_json(s.quotient_genus);
        if (s.genus) js["genus"] = int_to_json(*s.genus);
        if (s.label) js["label"] = *s.label;
        j["strata"].push_back(js);
    }
    j["points"] = json::array();
    for (const auto& p : c.points) {
        json jp;
        jp["id"] = p.id;
        jp["incidences"] = json::array();
        for (const auto& inc : p.incidences) {
            json ji;
            ji["stratum"] = inc.stratum;
            ji["multiplicity"] = int_to_json(inc.multiplicity);
            jp["incidences"].push_back(ji);
        }
        j["points"].push_back(jp);
    }
    j["standard_form"] = c.standard_form;
    if (c.expected_brauer) {
        json ex = json::array();
        for (const Int& d : c.expected_brauer->invariant_factors()) ex.push_back(int_to_json(d));
        j["expected_brauer"] = ex;
    }
    if (!c.notes.empty()) j["notes"] = c.notes;
    return j.dump(2) + "\n";
}

StratificationCase load_case_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open case file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_case(buf.str());
}

}  // namespace qbr
