#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbr/abelian.hpp"

namespace qbr {

struct GroupSpec {
    std::string name;               // free-text label, e.g. "C3xC6"
    std::vector<Int> cyclic_orders; // orders >= 1, product = |G|
};

struct Stratum {
    std::string id;
    Int stabilizer_order;           // |I|, >= 2
    Int quotient_genus;             // genus of the quotient curve, >= 0
    std::optional<Int> genus;       // genus upstairs, informational
    std::optional<std::string> label;
};

struct Incidence {
    std::string stratum;
    Int multiplicity;               // >= 1; all shipped cases use 1
};

struct PointOrbit {
    std::string id;
    std::vector<Incidence> incidences;
};

struct StratificationCase {
    std::string label;
    GroupSpec group;
    std::vector<Stratum> strata;
    std::vector<PointOrbit> points;
    bool standard_form = false;
    std::optional<AbelianGroup> expected_brauer;
    std::string notes;
};

struct Violation {
    std::string code;     // e.g. "dangling-stratum-reference"
    std::string message;
};

// Full schema check. Violations are data: an empty list means valid.
std::vector<Violation> validate_case(const StratificationCase& c);

// Solves 2g - 2 = d(2g' - 2) + sum(e_P - 1) for g'. Throws input_error when
// the solution is non-integral or negative.
Int rh_quotient_genus(const Int& genus, const Int& degree, const std::vector<Int>& ramification);

// Case file round-trip. parse_case rejects unknown fields.
StratificationCase parse_case(const std::string& json_text);
std::string render_case(const StratificationCase& c);

StratificationCase load_case_file(const std::string& path);

}  // namespace qbr
