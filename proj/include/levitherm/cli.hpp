// cli.hpp - run configuration, subcommand dispatch and figure data
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levitherm/energy.hpp"
#include "levitherm/materials.hpp"
#include "levitherm/matching.hpp"

namespace levitherm::cli {

struct GridSpec {
    double min = 0.0;  // both zero: the command's default window
    double max = 0.0;
    int points = 60;
    std::string spacing = "log";  // log | linear

    bool operator==(const GridSpec&) const = default;
};

// Field temperatures for the heat-capacity sweep, in units of Theta_E.
struct SweepSpec {
    double min = 0.1;
    double max = 10.0;
    int points = 30;

    bool operator==(const SweepSpec&) const = default;
};

struct RunConfig {
    std::string material = "gold";
    std::optional<MaterialSpec> inline_material;  // replaces the named material when set
    std::string material_db;                      // JSON file searched before the built-ins
    double radius_nm = 50.0;
    double g_over_Omega = 1e-8;
    std::string params = "matched";  // matched | reference
    TemperatureSet temperatures;
    GridSpec t_grid;
    SweepSpec sweep;
    double rel_tol = 1e-6;
    double abs_tol = 0.0;
    int max_subdivisions = 20000;
    std::string output;  // empty: standard output
    std::string format = "csv";  // csv | json | table
    std::string outdir = ".";

    bool operator==(const RunConfig&) const = default;
    void validate() const;
};

// Strict: unknown keys raise DomainError naming the key.
RunConfig parse_run_config(const std::string& json_text);
std::string dump_run_config(const RunConfig& cfg);

MaterialSpec resolve_material(const RunConfig& cfg);
ModelParams resolve_params(const RunConfig& cfg);
QuadratureSpec resolve_quad(const RunConfig& cfg);
std::vector<double> resolve_time_grid(const RunConfig& cfg, const ModelParams& p);

// Columns plus rows, written with 12 significant digits.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};
std::string to_csv(const Table& t);

// Figure data, each a table and a gnuplot script reading "<name>.csv".
struct Figure {
    std::string name;
    Table table;
    std::string gnuplot;
};
Figure figure_fig1(const RunConfig& cfg);
Figure figure_fig3(const RunConfig& cfg);
Figure figure_fig4(const RunConfig& cfg, const std::string& material);
Figure figure_fig5(const RunConfig& cfg);

// Exit codes: 0 success, 1 validation error, 2 numerical failure.
int run(int argc, char** argv);

}  // namespace levitherm::cli
