#include "qbr/catalog.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qbr {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw input_error("unknown field '" + it.key() + "' in " + where);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

AmitsurEntry parse_amitsur(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw input_error(std::string("amitsur file is not valid JSON: ") + e.what());
    }
    reject_unknown(j, {"label", "group", "amitsur_generators", "expected_brauer", "notes"}, "amitsur entry");
    AmitsurEntry e;
    if (!j.contains("label") || !j["label"].is_string()) throw input_error("amitsur entry: missing string 'label'");
    e.label = j["label"].get<std::string>();
    if (!j.contains("group") || !j["group"].is_object()) throw input_error("amitsur entry: missing object 'group'");
    reject_unknown(j["group"], {"name", "cyclic_orders"}, "group");
    e.group.name = j["group"].value("name", "");
    for (const auto& v : j["group"]["cyclic_orders"]) e.group.cyclic_orders.push_back(Int(v.get<long long>()));
    if (!j.contains("amitsur_generators") || !j["amitsur_generators"].is_array())
        throw input_error("amitsur entry: missing array 'amitsur_generators'");
    for (const auto& jg : j["amitsur_generators"]) {
        std::vector<Int> gen;
        for (const auto& v : jg) gen.push_back(Int(v.get<long long>()));
        e.amitsur_generators.push_back(std::move(gen));
    }
    if (!j.contains("expected_brauer")) throw input_error("amitsur entry: missing 'expected_brauer'");
    std::vector<Int> factors;
    for (const auto& v : j["expected_brauer"]) factors.push_back(Int(v.get<long long>()));
    e.expected = AbelianGroup::from_orders(factors);
    e.notes = j.value("notes", "");
    return e;
}

AmitsurEntry load_amitsur_file(const std::string& path) { return parse_amitsur(slurp(path)); }

std::string to_string(CatalogEntry::Kind k) {
    switch (k) {
        case CatalogEntry::Kind::Stratification: return "stratification";
        case CatalogEntry::Kind::Amitsur: return "amitsur";
        default: return "symbol-scenario";
    }
}

std::vector<CatalogEntry> scan_catalog(const std::string& catalog_dir, const std::string& scenarios_dir) {
    std::vector<CatalogEntry> out;
    if (!catalog_dir.empty()) {
        if (!fs::is_directory(catalog_dir)) throw input_error("catalog directory not found: " + catalog_dir);
        for (const auto& de : fs::directory_iterator(catalog_dir)) {
            if (de.path().extension() != ".json") continue;
            json j;
            try {
                j = json::parse(slurp(de.path().string()));
            } catch (const json::exception& e) {
                throw input_error("catalog file " + de.path().string() + " is not valid JSON: " + e.what());
            }
            CatalogEntry entry;
            entry.path = de.path().string();
            entry.label = j.value("label", de.path().stem().string());
            if (j.contains("strata"))
                entry.kind = CatalogEntry::Kind::Stratification;
            else if (j.contains("amitsur_generators"))
                entry.kind = CatalogEntry::Kind::Amitsur;
            else
                throw input_error("catalog file " + entry.path + " is neither a stratification case nor an amitsur entry");
            out.push_back(std::move(entry));
        }
    }
    if (!scenarios_dir.empty() && fs::is_directory(scenarios_dir)) {
        for (const auto& de : fs::directory_iterator(scenarios_dir)) {
            if (de.path().extension() != ".json") continue;
            json j;
            try {
                j = json::parse(slurp(de.path().string()));
            } catch (const json::exception& e) {
                throw input_error("scenario file " + de.path().string() + " is not valid JSON: " + e.what());
            }
            CatalogEntry entry;
            entry.path = de.path().string();
            entry.label = j.value("name", de.path().stem().string());
            entry.kind = CatalogEntry::Kind::SymbolScenario;
            out.push_back(std::move(entry));
        }
    }
    std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) { return a.label < b.label; });
    return out;
}

bool glob_match(const std::string& pattern, const std::string& text) {
    std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

VerificationReport verify_catalog(const std::vector<CatalogEntry>& entries, const std::string& filter,
                                  const Int& oracle_cap) {
    VerificationReport report;
    for (const auto& entry : entries) {
        if (!filter.empty() && !glob_match(filter, entry.label)) continue;
        EntryOutcome out;
        out.label = entry.label;
        out.kind = to_string(entry.kind);
        auto start = std::chrono::steady_clock::now();
        try {
            switch (entry.kind) {
                case CatalogEntry::Kind::Stratification: {
                    StratificationCase c = load_case_file(entry.path);
                    if (!c.expected_brauer) throw input_error("entry has no expected_brauer");
                    BrauerResult r = solve(c);
                    out.expected = c.expected_brauer->to_string();
                    out.computed = r.total.to_string();
                    out.matched = (r.total == *c.expected_brauer);
                    if (brute_force_state_count(c) <= oracle_cap) {
                        out.oracle_ran = true;
                        AbelianGroup oracle = brute_force(c, oracle_cap);
                        out.oracle_matched = (oracle == r.total);
                        if (!out.oracle_matched)
                            out.details.push_back("oracle disagrees: " + oracle.to_string());
                    }
                    break;
                }
                case CatalogEntry::Kind::Amitsur: {
                    AmitsurEntry e = load_amitsur_file(entry.path);
                    AbelianGroup got = brauer_from_amitsur(e.group, e.amitsur_generators);
                    out.expected = e.expected.to_string();
                    out.computed = got.to_string();
                    out.matched = (got == e.expected);
                    break;
                }
                case CatalogEntry::Kind::SymbolScenario: {
                    Scenario sc = load_scenario_file(entry.path);
                    StackCheckReport rep = run_scenario(sc);
                    out.details = verify_scenario(sc, rep);
                    out.expected = "stated verdicts";
                    std::ostringstream os;
                    os << (rep.certified_in_brauer ? "in Br" : "not certified") << ", "
                       << (rep.certified_nonzero ? "nonzero" : "no nonzero certificate");
                    out.computed = os.str();
                    out.matched = out.details.empty();
                    break;
                }
            }
        } catch (const std::exception& e) {
            out.matched = false;
            out.details.push_back(std::string("error: ") + e.what());
        }
        out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        bool ok = out.matched && out.oracle_matched;
        if (ok)
            ++report.passed;
        else {
            ++report.failed;
            report.all_match = false;
        }
        report.entries.push_back(std::move(out));
    }
    return report;
}

std::string render_report_json(const VerificationReport& r) {
    json j;
    j["entries"] = json::array();
    for (const auto& e : r.entries) {
        json je;
        je["label"] = e.label;
        je["kind"] = e.kind;
        je["expected"] = e.expected;
        je["computed"] = e.computed;
        je["matched"] = e.matched;
        je["oracle_ran"] = e.oracle_ran;
        je["oracle_matched"] = e.oracle_matched;
        je["millis"] = e.millis;
        if (!e.details.empty()) je["details"] = e.details;
        j["entries"].push_back(je);
    }
    j["summary"]["total"] = r.entries.size();
    j["summary"]["passed"] = r.passed;
    j["summary"]["failed"] = r.failed;
    j["all_match"] = r.all_match;
    return j.dump(2) + "\n";
}

std::string render_report_table(const VerificationReport& r) {
    std::ostringstream os;
    std::size_t wl = 5, wk = 4, we = 8;
    for (const auto& e : r.entries) {
        wl = std::max(wl, e.label.size());
        wk = std::max(wk, e.kind.size());
        we = std::max(we, e.expected.size());
    }
    for (const auto& e : r.entries) {
        os << (e.matched && e.oracle_matched ? "  ok " : "FAIL ");
        os << e.label << std::string(wl - e.label.size() + 2, ' ');
        os << e.kind << std::string(wk - e.kind.size() + 2, ' ');
        os << "expected " << e.expected << std::string(we - e.expected.size() + 2, ' ');
        os << "computed " << e.computed;
        if (e.oracle_ran) os << "  [oracle " << (e.oracle_matched ? "ok" : "FAIL") << "]";
        os << "\n";
        for (const auto& d : e.details) os << "       - " << d << "\n";
    }
    os << r.entries.size() << " entries, " << r.passed << " passed, " << r.failed << " failed\n";
    return os.str();
}

}  // namespace qbr
