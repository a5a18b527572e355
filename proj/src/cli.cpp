#include "levitherm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "levitherm/fed.hpp"
#include "levitherm/propagators.hpp"

namespace levitherm::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
    if (!j.is_object()) throw DomainError(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw DomainError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw DomainError(std::string("bad value for key '") + key + "'");
    }
}

json material_json(const MaterialSpec& m) {
    return {{"name", m.name},       {"omega_pl", m.omega_pl}, {"omega_1", m.omega_1}, {"gamma_d", m.gamma_d},
            {"theta_E", m.theta_E}, {"rho", m.rho},           {"c_bulk", m.c_bulk},   {"c_sound", m.c_sound}};
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

std::vector<double> spaced(double lo, double hi, int n, bool log) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        v[i] = log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
    }
    v.back() = hi;
    return v;
}

std::vector<double> log_grid_with_zero(double lo, double hi, int n) {
    std::vector<double> t{0.0};
    for (double x : spaced(lo, hi, n, true)) t.push_back(x);
    return t;
}

RunConfig with_material(RunConfig cfg, const std::string& name, const std::string& params) {
    cfg.material = name;
    cfg.inline_material.reset();
    cfg.params = params;
    return cfg;
}

std::string g_label(double g) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0e", g);
    return buf;
}

// Time scale of the FED cooling: stored heat over initial net power.
double fed_time_scale(const MaterialSpec& mat, const Geometry& geo, double T0, double T_EM) {
    const FedPowerTable table(mat, geo, std::min(T0, T_EM), std::max(T0, T_EM));
    const double P = std::abs(table.power(T0, T_EM));
    if (!(P > 0.0)) return 1.0;
    return table.heat_capacity() * std::abs(T0 - T_EM) / P;
}

std::string plot_script(const std::string& name, const std::string& xlabel, const std::string& ylabel, bool logx,
                        const std::vector<std::pair<int, std::string>>& series) {
    std::ostringstream s;
    s << "set datafile separator ','\n";
    s << "set key autotitle columnhead\n";
    if (logx) s << "set logscale x\n";
    s << "set xlabel '" << xlabel << "'\nset ylabel '" << ylabel << "'\n";
    s << "set terminal pngcairo size 900,600\nset output '" << name << ".png'\n";
    s << "plot ";
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (i) s << ", \\\n     ";
        s << "'" << name << ".csv' using 1:" << series[i].first << " with lines " << series[i].second;
    }
    s << "\n";
    return s.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file '" + path + "'");
    f << text;
}

std::string table_text(const ModelParams& p, const MaterialSpec& m, double R_nm) {
    char buf[512];
    std::string s = "material  R[nm]  Omega[rad/s]  gamma_I/Omega  q2/m/R^3[C^2/kg/nm^3]  w_theta/Omega  g_max/Omega\n";
    std::snprintf(buf, sizeof buf, "%-8s  %5.1f  %.4e  %.4e  %.4e  %.4e  %.4e\n", m.name.c_str(), R_nm, p.Omega,
                  p.gamma_I / p.Omega, p.q2_over_m / (R_nm * R_nm * R_nm), p.omega_theta / p.Omega,
                  g_upper_bound(p) / p.Omega);
    return s + buf;
}

json pole_json(const ExpTerm& t) {
    const cplx s = t.pole();
    return {{"re", s.real()},         {"im", s.imag()},        {"offset_re", t.offset.real()},
            {"offset_im", t.offset.imag()}, {"anchor", t.anchor}, {"power", t.power},
            {"residue_re", t.residue.real()}, {"residue_im", t.residue.imag()}};
}

}  // namespace

void RunConfig::validate() const {
    if (!(radius_nm > 0.0)) throw DomainError("radius_nm must be positive");
    if (!(g_over_Omega > 0.0 && g_over_Omega < 1.0)) throw DomainError("g_over_Omega must lie in (0, 1)");
    if (params != "matched" && params != "reference") throw DomainError("params must be 'matched' or 'reference'");
    if (format != "csv" && format != "json" && format != "table") throw DomainError("format must be csv, json or table");
    temperatures.validate();
    if (t_grid.points < 1) throw DomainError("t_grid.points must be at least 1");
    if (t_grid.spacing != "log" && t_grid.spacing != "linear") throw DomainError("t_grid.spacing must be log or linear");
    if (!(t_grid.min == 0.0 && t_grid.max == 0.0)) {
        if (!(t_grid.max > t_grid.min && t_grid.min >= 0.0)) throw DomainError("t_grid needs 0 <= min < max");
        if (t_grid.spacing == "log" && !(t_grid.min > 0.0)) throw DomainError("log t_grid needs min > 0");
    }
    if (!(sweep.min > 0.0 && sweep.max > sweep.min && sweep.points >= 2)) throw DomainError("bad sweep range");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be positive");
    resolve_quad(*this).validate();
    if (inline_material) inline_material->validate();
}

RunConfig parse_run_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(j,
                   {"material", "material_db", "radius_nm", "g_over_Omega", "params", "temperatures", "t_grid", "sweep",
                    "rel_tol", "abs_tol", "max_subdivisions", "output", "format", "outdir"},
                   "config");
    RunConfig c;
    if (j.contains("material")) {
        const json& m = j.at("material");
        if (m.is_string()) {
            c.material = m.get<std::string>();
        } else if (m.is_object()) {
            c.inline_material = parse_material_db(json::array({m}).dump()).front();
            c.material = c.inline_material->name;
        } else {
            throw DomainError("bad value for key 'material'");
        }
    }
    read(j, "material_db", c.material_db);
    read(j, "radius_nm", c.radius_nm);
    read(j, "g_over_Omega", c.g_over_Omega);
    read(j, "params", c.params);
    if (j.contains("temperatures")) {
        const json& t = j.at("temperatures");
        reject_unknown(t, {"T_EM", "T_Omega", "T_theta", "T_gamma"}, "temperatures");
        read(t, "T_EM", c.temperatures.T_EM);
        read(t, "T_Omega", c.temperatures.T_Omega);
        read(t, "T_theta", c.temperatures.T_theta);
        read(t, "T_gamma", c.temperatures.T_gamma);
    }
    if (j.contains("t_grid")) {
        const json& t = j.at("t_grid");
        reject_unknown(t, {"min", "max", "points", "spacing"}, "t_grid");
        read(t, "min", c.t_grid.min);
        read(t, "max", c.t_grid.max);
        read(t, "points", c.t_grid.points);
        read(t, "spacing", c.t_grid.spacing);
    }
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        reject_unknown(s, {"min", "max", "points"}, "sweep");
        read(s, "min", c.sweep.min);
        read(s, "max", c.sweep.max);
        read(s, "points", c.sweep.points);
    }
    read(j, "rel_tol", c.rel_tol);
    read(j, "abs_tol", c.abs_tol);
    read(j, "max_subdivisions", c.max_subdivisions);
    read(j, "output", c.output);
    read(j, "format", c.format);
    read(j, "outdir", c.outdir);
    c.validate();
    return c;
}

std::string dump_run_config(const RunConfig& c) {
    json j;
    j["material"] = c.inline_material ? material_json(*c.inline_material) : json(c.material);
    j["material_db"] = c.material_db;
    j["radius_nm"] = c.radius_nm;
    j["g_over_Omega"] = c.g_over_Omega;
    j["params"] = c.params;
    j["temperatures"] = {{"T_EM", c.temperatures.T_EM},
                         {"T_Omega", c.temperatures.T_Omega},
                         {"T_theta", c.temperatures.T_theta},
                         {"T_gamma", c.temperatures.T_gamma}};
    j["t_grid"] = {{"min", c.t_grid.min}, {"max", c.t_grid.max}, {"points", c.t_grid.points}, {"spacing", c.t_grid.spacing}};
    j["sweep"] = {{"min", c.sweep.min}, {"max", c.sweep.max}, {"points", c.sweep.points}};
    j["rel_tol"] = c.rel_tol;
    j["abs_tol"] = c.abs_tol;
    j["max_subdivisions"] = c.max_subdivisions;
    j["output"] = c.output;
    j["format"] = c.format;
    j["outdir"] = c.outdir;
    return j.dump(2) + "\n";
}

MaterialSpec resolve_material(const RunConfig& cfg) {
    if (cfg.inline_material) return *cfg.inline_material;
    if (!cfg.material_db.empty())
        for (const auto& m : load_material_db(cfg.material_db))
            if (m.name == cfg.material) return m;
    return builtin_material(cfg.material);
}

ModelParams resolve_params(const RunConfig& cfg) {
    const Geometry geo = Geometry::from_nm(cfg.radius_nm);
    if (cfg.params == "reference") {
        const double W = reference_row(cfg.material).Omega;
        return reference_params(cfg.material, geo, cfg.g_over_Omega * W);
    }
    const MaterialSpec mat = resolve_material(cfg);
    // g is quoted relative to the matched Omega, which itself shifts by O(g^2)
    double g = cfg.g_over_Omega * std::sqrt(mat.omega_pl * mat.omega_pl / 3.0 + mat.omega_1 * mat.omega_1);
    ModelParams p = match_model(mat, geo, g);
    p = match_model(mat, geo, cfg.g_over_Omega * p.Omega);
    return p;
}

QuadratureSpec resolve_quad(const RunConfig& cfg) {
    QuadratureSpec q = default_energy_quad();
    q.rel_tol = cfg.rel_tol;
    q.abs_tol = cfg.abs_tol;
    q.max_subdivisions = cfg.max_subdivisions;
    return q;
}

std::vector<double> resolve_time_grid(const RunConfig& cfg, const ModelParams& p) {
    if (cfg.t_grid.min == 0.0 && cfg.t_grid.max == 0.0) return default_time_grid(p, cfg.t_grid.points);
    return spaced(cfg.t_grid.min, cfg.t_grid.max, cfg.t_grid.points, cfg.t_grid.spacing == "log");
}

std::string to_csv(const Table& t) {
    std::string s;
    for (std::size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + t.header[i];
    s += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + fmt(row[i]);
        s += "\n";
    }
    return s;
}

Figure figure_fig1(const RunConfig& cfg) {
    const MaterialSpec mat = builtin_material("gold");
    const double T0 = 1000.0, T_EM = 300.0;
    const std::vector<double> radii{10.0, 50.0, 100.0, 200.0};
    const double tau = fed_time_scale(mat, Geometry::from_nm(50.0), T0, T_EM);
    const auto grid = log_grid_with_zero(1e-3 * tau, 1e3 * tau, cfg.t_grid.points);

    Figure f{"fig1", {}, {}};
    f.table.header = {"t_s"};
    std::vector<std::vector<double>> cols;
    for (double R : radii) {
        FedRun run;
        run.material = mat;
        run.geometry = Geometry::from_nm(R);
        run.T0 = T0;
        run.T_EM = T_EM;
        run.t_grid = grid;
        cols.push_back(fed_thermalize(run).T);
        f.table.header.push_back("T_R" + std::to_string(static_cast<int>(R)) + "nm_K");
    }
    std::vector<std::pair<int, std::string>> series;
    for (std::size_t k = 0; k < radii.size(); ++k) series.push_back({static_cast<int>(k) + 2, ""});
    for (std::size_t i = 1; i < grid.size(); ++i) {
        std::vector<double> row{grid[i]};
        for (const auto& c : cols) row.push_back(c[i]);
        f.table.rows.push_back(row);
    }
    f.gnuplot = plot_script("fig1", "t [s]", "T [K]", true, series);
    return f;
}

Figure figure_fig3(const RunConfig& cfg) {
    const std::vector<double> thetas{100.0, 300.0, 1000.0};
    RunConfig base = with_material(cfg, "gold", "matched");
    base.radius_nm = 50.0;
    base.g_over_Omega = 1e-9;
    const QuadratureSpec quad = resolve_quad(cfg);
    const auto T = spaced(10.0, 1e4, cfg.t_grid.points, true);

    Figure f{"fig3", {}, {}};
    f.table.header = {"T_K"};
    std::vector<ModelParams> ps;
    for (double th : thetas) {
        MaterialSpec m = builtin_material("gold");
        m.theta_E = th;
        base.inline_material = m;
        ps.push_back(resolve_params(base));
        const std::string tag = std::to_string(static_cast<int>(th)) + "K";
        f.table.header.push_back("C_over_3kB_thetaE" + tag);
        f.table.header.push_back("C_einstein_over_3kB_thetaE" + tag);
    }
    for (double Tk : T) {
        std::vector<double> row{Tk};
        for (std::size_t k = 0; k < thetas.size(); ++k) {
            const double b = beta_of(Tk);
            row.push_back(specific_heat(ps[k], b, quad) / (3.0 * phys::kB));
            row.push_back(einstein_specific_heat(thetas[k], b) / (3.0 * phys::kB));
        }
        f.table.rows.push_back(row);
    }
    std::vector<std::pair<int, std::string>> series;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        series.push_back({static_cast<int>(2 * k + 2), ""});
        series.push_back({static_cast<int>(2 * k + 3), "dt 2 lc black"});
    }
    f.gnuplot = plot_script("fig3", "T_EM [K]", "C/3k_B", true, series);
    return f;
}

Figure figure_fig4(const RunConfig& cfg, const std::string& material) {
    const std::vector<double> gs{1e-9, 1e-8, 1e-7};
    RunConfig base = with_material(cfg, material, material == "silica" ? "reference" : "matched");
    base.radius_nm = 50.0;
    base.temperatures = TemperatureSet{};
    const QuadratureSpec quad = resolve_quad(cfg);

    std::vector<ModelParams> ps;
    for (double g : gs) {
        base.g_over_Omega = g;
        ps.push_back(resolve_params(base));
    }
    const auto grid = log_grid_with_zero(0.1 * t_max(ps.back()), 40.0 / kappa_slow(ps.front()), cfg.t_grid.points);

    Figure f{"fig4_" + material, {}, {}};
    f.table.header = {"t_s"};
    std::vector<EnergyCurve> curves;
    for (std::size_t k = 0; k < gs.size(); ++k) {
        curves.push_back(internal_energy_curve(ps[k], base.temperatures, grid, quad));
        f.table.header.push_back("T_eff_g" + g_label(gs[k]) + "_K");
    }
    FedRun run;
    run.material = builtin_material(material);
    run.geometry = Geometry::from_nm(50.0);
    run.T0 = base.temperatures.T_theta;
    run.T_EM = base.temperatures.T_EM;
    run.t_grid = grid;
    const FedSeries fed = fed_thermalize(run);
    f.table.header.push_back("T_fed_K");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{grid[i]};
        for (const auto& c : curves) row.push_back(c.u_eff_temp[i]);
        row.push_back(fed.T[i]);
        f.table.rows.push_back(row);
    }
    f.gnuplot = plot_script(f.name, "t [s]", "u/3k_B [K]", true, {{2, ""}, {3, ""}, {4, ""}, {5, "dt 2 lc black"}});
    return f;
}

Figure figure_fig5(const RunConfig& cfg) {
    const std::vector<double> radii{25.0, 50.0, 100.0};
    RunConfig base = with_material(cfg, "silica", "reference");
    base.g_over_Omega = 1e-8;
    base.temperatures = TemperatureSet{};
    const QuadratureSpec quad = resolve_quad(cfg);

    std::vector<ModelParams> ps;
    double t_lo = 0.0;
    for (double R : radii) {
        base.radius_nm = R;
        ps.push_back(resolve_params(base));
        t_lo = std::max(t_lo, t_max(ps.back()));
    }
    const auto grid = log_grid_with_zero(t_lo, 40.0 / kappa_slow(ps.front()), cfg.t_grid.points);

    Figure f{"fig5", {}, {}};
    f.table.header = {"t_s"};
    std::vector<EnergyCurve> curves;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        curves.push_back(internal_energy_curve(ps[k], base.temperatures, grid, quad));
        f.table.header.push_back("T_eff_R" + std::to_string(static_cast<int>(radii[k])) + "nm_K");
    }
    // u - u0 separates the radii long before the effective temperatures do
    for (double R : radii) f.table.header.push_back("du_R" + std::to_string(static_cast<int>(R)) + "nm_J");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{grid[i]};
        for (const auto& c : curves) row.push_back(c.u_eff_temp[i]);
        for (const auto& c : curves) row.push_back(c.du[i]);
        f.table.rows.push_back(row);
    }
    f.gnuplot = plot_script("fig5", "t [s]", "u/3k_B [K]", true, {{2, ""}, {3, ""}, {4, ""}});
    return f;
}

namespace {

struct Overrides {
    std::string config, material, material_db, params, output, format, outdir, spacing;
    double radius_nm = 0, g = 0, T_EM = 0, T_particle = 0, t_min = -1, t_max = -1, rel_tol = 0;
    int points = 0;
};

void add_common(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config, "JSON run configuration");
    sub->add_option("--material", o.material, "material name");
    sub->add_option("--material-db", o.material_db, "JSON material database");
    sub->add_option("--radius-nm", o.radius_nm, "sphere radius in nm");
    sub->add_option("--g", o.g, "coupling g in units of Omega");
    sub->add_option("--params", o.params, "matched | reference");
    sub->add_option("--T-em", o.T_EM, "field temperature in K");
    sub->add_option("--T-particle", o.T_particle, "initial temperature of the particle subsystems in K");
    sub->add_option("--t-min", o.t_min, "first time in s");
    sub->add_option("--t-max", o.t_max, "last time in s");
    sub->add_option("--points", o.points, "grid points");
    sub->add_option("--spacing", o.spacing, "log | linear");
    sub->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance");
    sub->add_option("-o,--output", o.output, "output file (default standard output)");
    sub->add_option("--format", o.format, "csv | json | table");
    sub->add_option("--outdir", o.outdir, "directory for figure files");
}

RunConfig build_config(const Overrides& o) {
    RunConfig c;
    if (!o.config.empty()) {
        std::ifstream f(o.config);
        if (!f) throw DomainError("cannot read config '" + o.config + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        c = parse_run_config(ss.str());
    }
    if (!o.material.empty()) {
        c.material = o.material;
        c.inline_material.reset();
    }
    if (!o.material_db.empty()) c.material_db = o.material_db;
    if (!o.params.empty()) c.params = o.params;
    if (!o.output.empty()) c.output = o.output;
    if (!o.format.empty()) c.format = o.format;
    if (!o.outdir.empty()) c.outdir = o.outdir;
    if (!o.spacing.empty()) c.t_grid.spacing = o.spacing;
    if (o.radius_nm != 0) c.radius_nm = o.radius_nm;
    if (o.g != 0) c.g_over_Omega = o.g;
    if (o.T_EM != 0) c.temperatures.T_EM = o.T_EM;
    if (o.T_particle != 0) c.temperatures.T_Omega = c.temperatures.T_theta = c.temperatures.T_gamma = o.T_particle;
    if (o.t_min >= 0) c.t_grid.min = o.t_min;
    if (o.t_max >= 0) c.t_grid.max = o.t_max;
    if (o.points != 0) c.t_grid.points = o.points;
    if (o.rel_tol != 0) c.rel_tol = o.rel_tol;
    c.validate();
    return c;
}

void warn_all(const ModelParams& p) {
    for (const auto& w : p.validate()) std::cerr << "warning: " << w << "\n";
}

void emit_figure(const RunConfig& cfg, const Figure& f) {
    std::filesystem::create_directories(cfg.outdir);
    const auto base = std::filesystem::path(cfg.outdir) / f.name;
    write_text(base.string() + ".csv", to_csv(f.table));
    write_text(base.string() + ".gp", f.gnuplot);
    std::cerr << "wrote " << base.string() << ".csv and " << base.string() << ".gp\n";
}

int cmd_match(const RunConfig& cfg) {
    const ModelParams p = resolve_params(cfg);
    warn_all(p);
    const MaterialSpec m = cfg.params == "reference" ? MaterialSpec{cfg.material} : resolve_material(cfg);
    if (cfg.format == "table") {
        write_text(cfg.output, table_text(p, m, cfg.radius_nm));
        return 0;
    }
    const auto cr = em_coupling_ratio(p, cfg.temperatures.T_EM);
    json j = {{"material", m.name},
              {"radius_nm", cfg.radius_nm},
              {"params", cfg.params},
              {"Omega_Hz", p.Omega},
              {"Omega_over_2pi_Hz", p.Omega / (2.0 * phys::pi)},
              {"omega_theta", p.omega_theta},
              {"g", p.g},
              {"gamma_I", p.gamma_I},
              {"gamma_I_over_Omega", p.gamma_I / p.Omega},
              {"q2_over_m", p.q2_over_m},
              {"q2_over_m_per_nm3", p.q2_over_m / std::pow(cfg.radius_nm, 3)},
              {"omega_q", p.omega_q()},
              {"Gamma_EM", p.Gamma_EM()},
              {"itb_cutoff", p.itb_cutoff},
              {"em_cutoff", p.em_cutoff},
              {"g_max_over_Omega", g_upper_bound(p) / p.Omega},
              {"em_coupling_ratio", cr.ratio},
              {"weak_em_coupling", cr.weak},
              {"t_max_s", t_max(p)},
              {"kappa_slow", kappa_slow(p)}};
    write_text(cfg.output, j.dump(2) + "\n");
    return 0;
}

int cmd_polarizability(const RunConfig& cfg) {
    const ModelParams p = resolve_params(cfg);
    const MaterialSpec m = resolve_material(cfg);
    const Geometry geo = Geometry::from_nm(cfg.radius_nm);
    const double lo = 0.5 * p.Omega, hi = 1.5 * p.Omega;
    Table t;
    t.header = {"omega_rad_s", "re_alpha_drude", "im_alpha_drude", "re_alpha_model", "im_alpha_model", "rel_dev"};
    for (double w : spaced(lo, hi, std::max(cfg.t_grid.points, 2), false)) {
        const cplx a = cm_polarizability(m, geo, w), b = model_polarizability(p, w);
        t.rows.push_back({w, a.real(), a.imag(), b.real(), b.imag(), std::abs(b - a) / std::abs(a)});
    }
    write_text(cfg.output, to_csv(t));
    return 0;
}

int cmd_poles(const RunConfig& cfg) {
    const ModelParams p = resolve_params(cfg);
    warn_all(p);
    json j;
    for (const auto& [name, k] : std::map<std::string, LaplaceKernel>{{"G_theta", g_theta_laplace(p)}, {"G_Omega", g_omega_laplace(p)}}) {
        json arr = json::array();
        for (const auto& term : to_exp_sum(k).terms) arr.push_back(pole_json(term));
        j[name] = arr;
    }
    const RrPoles rr = rr_poles(p);
    json roots = json::array();
    for (cplx r : rr.roots) roots.push_back({{"re", r.real()}, {"im", r.imag()}});
    j["radiation_reaction"] = {{"roots", roots}, {"runaway_index", rr.runaway_index},
                               {"right_half_plane_count", rr.right_half_plane_count}, {"omega_q", p.omega_q()}};
    j["kappa_slow"] = kappa_slow(p);
    write_text(cfg.output, j.dump(2) + "\n");
    return 0;
}

int cmd_evolve(const RunConfig& cfg) {
    const ModelParams p = resolve_params(cfg);
    warn_all(p);
    const EnergyCurve c = internal_energy_curve(p, cfg.temperatures, resolve_time_grid(cfg, p), resolve_quad(cfg));
    int failed = 0;
    Table t;
    t.header = {"t_s", "u_J", "T_eff_K"};
    for (std::size_t i = 0; i < c.t.size(); ++i) {
        t.rows.push_back({c.t[i], c.u[i], c.u_eff_temp[i]});
        if (!c.ok[i]) {
            ++failed;
            std::cerr << "point t=" << fmt(c.t[i]) << " failed: " << c.errors[i] << "\n";
        }
    }
    if (cfg.format == "json") {
        json j = {{"t_s", c.t}, {"u_J", c.u}, {"T_eff_K", c.u_eff_temp}, {"u0_J", c.u0}, {"u_inf_J", c.u_inf}};
        write_text(cfg.output, j.dump(2) + "\n");
    } else {
        write_text(cfg.output, to_csv(t));
    }
    std::cerr << "u0 = " << fmt(c.u0) << " J, u_inf = " << fmt(c.u_inf) << " J\n";
    return failed ? 2 : 0;
}

int cmd_uinf(const RunConfig& cfg) {
    const ModelParams p = resolve_params(cfg);
    warn_all(p);
    const auto& T = cfg.temperatures;
    const double u = u_infinity(p, T.beta_EM(), T.beta_gamma(), resolve_quad(cfg));
    const double u0 = initial_energy(p, T.beta_theta());
    json j = {{"u_inf_J", u}, {"T_eff_K", effective_temperature(u)}, {"u0_J", u0}, {"kappa_slow", kappa_slow(p)}};
    write_text(cfg.output, j.dump(2) + "\n");
    return 0;
}

int cmd_cv(const RunConfig& cfg) {
    const ModelParams p = resolve_params(cfg);
    warn_all(p);
    const double thetaE = phys::hbar * p.omega_theta / phys::kB;
    const QuadratureSpec quad = resolve_quad(cfg);
    Table t;
    t.header = {"T_K", "C_over_3kB", "C_einstein_over_3kB"};
    for (double x : spaced(cfg.sweep.min, cfg.sweep.max, cfg.sweep.points, true)) {
        const double Tk = x * thetaE, b = beta_of(Tk);
        t.rows.push_back({Tk, specific_heat(p, b, quad) / (3.0 * phys::kB), einstein_specific_heat(thetaE, b) / (3.0 * phys::kB)});
    }
    write_text(cfg.output, to_csv(t));
    return 0;
}

int cmd_shorttime(const RunConfig& cfg) {
    const ModelParams p = resolve_params(cfg);
    warn_all(p);
    const double tm = t_max(p);
    const bool custom = !(cfg.t_grid.min == 0.0 && cfg.t_grid.max == 0.0);
    const auto grid = custom ? resolve_time_grid(cfg, p) : spaced(0.0, tm, cfg.t_grid.points, false);
    const EnergyModel model(p, cfg.temperatures, resolve_quad(cfg));
    Table t;
    t.header = {"t_s", "t_over_t_max", "du_model_J", "du_series_J"};
    for (double x : grid) {
        const EnergyParts e = model.parts(x);
        t.rows.push_back({x, x / tm, e.odf + e.baths, short_time_increment(p, cfg.temperatures, x)});
    }
    write_text(cfg.output, to_csv(t));
    std::cerr << "t_max = " << fmt(tm) << " s\n";
    return 0;
}

int cmd_fed(const RunConfig& cfg) {
    FedRun run;
    run.material = resolve_material(cfg);
    run.geometry = Geometry::from_nm(cfg.radius_nm);
    run.T0 = cfg.temperatures.T_theta;
    run.T_EM = cfg.temperatures.T_EM;
    if (cfg.t_grid.min == 0.0 && cfg.t_grid.max == 0.0) {
        const double tau = fed_time_scale(run.material, run.geometry, run.T0, run.T_EM);
        run.t_grid = log_grid_with_zero(1e-3 * tau, 1e3 * tau, cfg.t_grid.points);
    } else {
        run.t_grid = spaced(cfg.t_grid.min, cfg.t_grid.max, cfg.t_grid.points, cfg.t_grid.spacing == "log");
    }
    if (run.geometry.beyond_dipole_regime()) std::cerr << "warning: radius beyond the point-dipole regime\n";
    Table t;
    t.header = {"t_s", "T_K"};
    try {
        const FedSeries s = fed_thermalize(run);
        for (std::size_t i = 0; i < s.t.size(); ++i) t.rows.push_back({s.t[i], s.T[i]});
    } catch (const FedFailure& e) {
        for (std::size_t i = 0; i < e.partial().t.size(); ++i) t.rows.push_back({e.partial().t[i], e.partial().T[i]});
        write_text(cfg.output, to_csv(t));
        throw;
    }
    write_text(cfg.output, to_csv(t));
    return 0;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"levitherm: internal-energy thermalization of a levitated nanoparticle"};
    app.require_subcommand(1);
    Overrides o;
    const std::vector<std::pair<std::string, std::string>> subs{
        {"fed", "quasi-equilibrium radiative cooling T(t)"},
        {"match", "matched model parameters"},
        {"polarizability", "Drude polarizability vs the matched model"},
        {"poles", "poles and residues of the propagators"},
        {"evolve", "internal energy u(t)"},
        {"uinf", "long-time internal energy"},
        {"cv", "heat capacity vs the Einstein model"},
        {"shorttime", "short-time energy increase vs the series"},
        {"config", "print the effective configuration as JSON"},
        {"fig1", "FED cooling for several radii"},
        {"fig3", "heat capacity for several Einstein temperatures"},
        {"fig4_gold", "u(t) of gold for three couplings with the FED curve"},
        {"fig4_silica", "u(t) of silica for three couplings with the FED curve"},
        {"fig5", "u(t) of silica for three radii"},
    };
    std::map<std::string, CLI::App*> handles;
    for (const auto& [name, desc] : subs) {
        handles[name] = app.add_subcommand(name, desc);
        add_common(handles[name], o);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, std::cout, std::cerr);
        return code == 0 ? 0 : 1;
    }
    try {
        const RunConfig cfg = build_config(o);
        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "fed") return cmd_fed(cfg);
        if (cmd == "match") return cmd_match(cfg);
        if (cmd == "polarizability") return cmd_polarizability(cfg);
        if (cmd == "poles") return cmd_poles(cfg);
        if (cmd == "evolve") return cmd_evolve(cfg);
        if (cmd == "uinf") return cmd_uinf(cfg);
        if (cmd == "cv") return cmd_cv(cfg);
        if (cmd == "shorttime") return cmd_shorttime(cfg);
        if (cmd == "config") {
            write_text(cfg.output, dump_run_config(cfg));
            return 0;
        }
        if (cmd == "fig1") emit_figure(cfg, figure_fig1(cfg));
        if (cmd == "fig3") emit_figure(cfg, figure_fig3(cfg));
        if (cmd == "fig4_gold") emit_figure(cfg, figure_fig4(cfg, "gold"));
        if (cmd == "fig4_silica") emit_figure(cfg, figure_fig4(cfg, "silica"));
        if (cmd == "fig5") emit_figure(cfg, figure_fig5(cfg));
        return 0;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << " (best estimate " << fmt(e.estimate()) << ", error bound "
                  << fmt(e.error_bound()) << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace levitherm::cli
