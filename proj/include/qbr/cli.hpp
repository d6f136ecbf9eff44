#pragma once

#include <iosfwd>
#include <string>

#include "qbr/abelian.hpp"

namespace qbr {

// Exit codes: 0 success, 1 mathematical mismatch or failed certification,
// 2 input error.
constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_input_error = 2;

int cmd_compute(const std::string& case_path, bool as_json, std::ostream& out, std::ostream& err);

int cmd_verify_catalog(const std::string& catalog_dir, const std::string& scenarios_dir, const std::string& filter,
                       const Int& oracle_cap, bool as_json, std::ostream& out, std::ostream& err);

int cmd_residue(const std::string& scenario_path, bool as_json, bool allow_unknown, std::ostream& out,
                std::ostream& err);

int cmd_schur(const std::string& orders_csv, const std::string& am_spec, bool as_json, std::ostream& out,
              std::ostream& err);

}  // namespace qbr
