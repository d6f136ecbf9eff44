#pragma once

#include <string>
#include <vector>

#include "qbr/scenario.hpp"
#include "qbr/solver.hpp"
#include "qbr/strat.hpp"

namespace qbr {

// Group quotient-by-Amitsur entry: the Schur multiplier path, with the
// Amitsur group supplied as generators in the canonical basis.
struct AmitsurEntry {
    std::string label;
    GroupSpec group;
    std::vector<std::vector<Int>> amitsur_generators;
    AbelianGroup expected;
    std::string notes;
};

AmitsurEntry parse_amitsur(const std::string& json_text);
AmitsurEntry load_amitsur_file(const std::string& path);

struct CatalogEntry {
    enum class Kind { Stratification, Amitsur, SymbolScenario };
    Kind kind;
    std::string label;
    std::string path;
};

std::string to_string(CatalogEntry::Kind k);

// Scans catalog_dir for case/amitsur files (kind detected from content) and
// scenarios_dir for residue scenarios; entries sorted by label.
std::vector<CatalogEntry> scan_catalog(const std::string& catalog_dir, const std::string& scenarios_dir);

struct EntryOutcome {
    std::string label;
    std::string kind;
    std::string expected;
    std::string computed;
    bool matched = false;
    bool oracle_ran = false;
    bool oracle_matched = true;
    double millis = 0.0;
    std::vector<std::string> details;
};

struct VerificationReport {
    std::vector<EntryOutcome> entries;
    std::size_t passed = 0;
    std::size_t failed = 0;
    bool all_match = true;
};

// '*' and '?' wildcards, anchored.
bool glob_match(const std::string& pattern, const std::string& text);

// Runs every matching entry: solver (plus the brute-force oracle when the
// state space fits under oracle_cap) on stratification entries, the Amitsur
// path on amitsur entries, the residue driver on scenarios.
VerificationReport verify_catalog(const std::vector<CatalogEntry>& entries, const std::string& filter,
                                  const Int& oracle_cap);

std::string render_report_json(const VerificationReport& r);
std::string render_report_table(const VerificationReport& r);

}  // namespace qbr
