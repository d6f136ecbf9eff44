#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbr/residue.hpp"

namespace qbr {

struct DivisorExpectation {
    std::optional<int> v_a, v_b;
    std::optional<SquareClass> verdict;
    std::optional<bool> killed;
};

struct ScenarioDivisor {
    DivisorCheck check;
    DivisorExpectation expected;
};

// A residue-verification job: a symbol over a declared variable list plus the
// divisor checks (charts, generators, strategies) and optional expectations.
struct Scenario {
    std::string name;
    std::vector<std::string> variables;
    Symbol symbol;
    std::vector<ScenarioDivisor> divisors;
    std::optional<bool> expected_in_brauer;
    std::optional<bool> expected_nonzero;
};

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

StackCheckReport run_scenario(const Scenario& sc);

// Mismatches against the scenario's stated expectations (empty = all met).
std::vector<std::string> verify_scenario(const Scenario& sc, const StackCheckReport& report);

std::string render_stack_report_json(const Scenario& sc, const StackCheckReport& report);

}  // namespace qbr
