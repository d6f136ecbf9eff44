#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qbr/cli.hpp"

#ifndef QBR_CATALOG_DIR
#define QBR_CATALOG_DIR "catalog"
#endif
#ifndef QBR_SCENARIOS_DIR
#define QBR_SCENARIOS_DIR "scenarios"
#endif

int main(int argc, char** argv) {
    CLI::App app{"qbrauer: exact Brauer groups of quotient stacks from stratification data"};
    app.require_subcommand(1);

    std::string case_path, scenario_path;
    std::string catalog_dir = QBR_CATALOG_DIR;
    std::string scenarios_dir = QBR_SCENARIOS_DIR;
    std::string filter;
    std::string orders, am_gens;
    long long oracle_cap = 10000000;
    bool as_json = false, allow_unknown = false;

    auto* compute = app.add_subcommand("compute", "solve one stratification case file");
    compute->add_option("case", case_path, "path to a case JSON file")->required();
    compute->add_flag("--json", as_json, "emit JSON");

    auto* verify = app.add_subcommand("verify-catalog", "run the shipped catalog against its expected results");
    verify->add_option("--catalog", catalog_dir, "catalog directory");
    verify->add_option("--scenarios", scenarios_dir, "scenarios directory");
    verify->add_option("--filter", filter, "label glob, e.g. '2.G*'");
    verify->add_option("--oracle-cap", oracle_cap, "state-count cap for the brute-force oracle");
    verify->add_flag("--json", as_json, "emit JSON report");

    auto* residue = app.add_subcommand("residue", "verify a symbol class through its residues");
    residue->add_option("scenario", scenario_path, "path to a scenario JSON file")->required();
    residue->add_flag("--json", as_json, "emit JSON");
    residue->add_flag("--allow-unknown", allow_unknown, "do not fail on undetermined square classes");

    auto* schur = app.add_subcommand("schur", "Schur multiplier and Amitsur quotient of an abelian group");
    schur->add_option("--orders", orders, "cyclic orders, e.g. 2,2,4")->required();
    schur->add_option("--am", am_gens, "Amitsur generators, e.g. '1,0,0;0,1,0'");
    schur->add_flag("--json", as_json, "emit JSON");

    CLI11_PARSE(app, argc, argv);

    if (compute->parsed()) return qbr::cmd_compute(case_path, as_json, std::cout, std::cerr);
    if (verify->parsed())
        return qbr::cmd_verify_catalog(catalog_dir, scenarios_dir, filter, qbr::Int(oracle_cap), as_json, std::cout,
                                       std::cerr);
    if (residue->parsed()) return qbr::cmd_residue(scenario_path, as_json, allow_unknown, std::cout, std::cerr);
    if (schur->parsed()) return qbr::cmd_schur(orders, am_gens, as_json, std::cout, std::cerr);
    return qbr::exit_input_error;
}
