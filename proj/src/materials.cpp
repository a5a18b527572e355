#include "levitherm/materials.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace levitherm {

using phys::pi;

void MaterialSpec::validate() const {
    if (!(omega_pl > 0.0)) throw DomainError("material " + name + ": omega_pl must be positive");
    if (!(omega_1 >= 0.0)) throw DomainError("material " + name + ": omega_1 must be non-negative");
    if (!(gamma_d > 0.0)) throw DomainError("material " + name + ": gamma_d must be positive");
    if (!(theta_E > 0.0)) throw DomainError("material " + name + ": theta_E must be positive");
    if (!(rho > 0.0 && c_bulk > 0.0 && c_sound > 0.0))
        throw DomainError("material " + name + ": rho, c_bulk and c_sound must be positive");
}

Geometry::Geometry(double radius_m) : radius(radius_m) {
    if (!(radius > 0.0)) throw DomainError("radius must be positive");
}

double Geometry::volume() const { return 4.0 * pi / 3.0 * radius * radius * radius; }

MaterialSpec gold() {
    MaterialSpec m;
    m.name = "gold";
    m.omega_pl = 2.0 * pi * 2.72e15;
    m.omega_1 = 0.0;
    m.gamma_d = 2.0 * pi * 6.45e12;
    // Einstein temperature placing w_theta at 1.8e-3 of the optical frequency 2 pi 1.57e15
    m.theta_E = phys::hbar * 1.8e-3 * 2.0 * pi * 1.57e15 / phys::kB;
    m.rho = 19300.0;
    m.c_bulk = 129.0;
    m.c_sound = 3240.0;
    return m;
}

MaterialSpec silica() {
    // Chosen to reproduce the tabulated silica model row: q^2/m = 5.13e-5 R[nm]^3,
    // gamma_I = 1.8e-3 Omega, w_theta = 2e-3 Omega with Omega = 2 pi 3.39e15.
    // The row implies a slightly negative w_1^2, clamped to zero here.
    const double omega_ref = 2.0 * pi * 3.39e15;
    const double v_nm3 = 4.0 * pi / 3.0 * 1e-27;
    MaterialSpec m;
    m.name = "silica";
    m.omega_pl = std::sqrt(5.13e-5 / (phys::eps0 * v_nm3));
    m.omega_1 = 0.0;
    m.gamma_d = 4.0 * 1.8e-3 * omega_ref;
    m.theta_E = phys::hbar * 2e-3 * omega_ref / phys::kB;
    m.rho = 2200.0;
    m.c_bulk = 730.0;
    m.c_sound = 5900.0;
    return m;
}

namespace {

MaterialSpec from_json(const nlohmann::json& j) {
    static const char* keys[] = {"name", "omega_pl", "omega_1", "gamma_d", "theta_E", "rho", "c_bulk", "c_sound"};
    if (!j.is_object()) throw DomainError("material entry must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known = known || it.key() == k;
        if (!known) throw DomainError("material database: unknown key '" + it.key() + "'");
    }
    for (const char* k : keys)
        if (!j.contains(k)) throw DomainError(std::string("material database: missing key '") + k + "'");
    MaterialSpec m;
    try {
        m.name = j.at("name").get<std::string>();
        m.omega_pl = j.at("omega_pl").get<double>();
        m.omega_1 = j.at("omega_1").get<double>();
        m.gamma_d = j.at("gamma_d").get<double>();
        m.theta_E = j.at("theta_E").get<double>();
        m.rho = j.at("rho").get<double>();
        m.c_bulk = j.at("c_bulk").get<double>();
        m.c_sound = j.at("c_sound").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("material database: ") + e.what());
    }
    m.validate();
    return m;
}

}  // namespace

std::vector<MaterialSpec> parse_material_db(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("material database: ") + e.what());
    }
    if (doc.is_object()) {
        for (auto it = doc.begin(); it != doc.end(); ++it)
            if (it.key() != "materials") throw DomainError("material database: unknown key '" + it.key() + "'");
        if (!doc.contains("materials")) throw DomainError("material database: missing key 'materials'");
        doc = doc.at("materials");
    }
    if (!doc.is_array()) throw DomainError("material database must be an array of materials");
    std::vector<MaterialSpec> out;
    for (const auto& e : doc) out.push_back(from_json(e));
    return out;
}

std::vector<MaterialSpec> load_material_db(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open material database '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_material_db(ss.str());
}

MaterialSpec builtin_material(const std::string& name) {
    if (name == "gold") return gold();
    if (name == "silica") return silica();
    throw DomainError("unknown material '" + name + "'");
}

cplx permittivity(const MaterialSpec& mat, double omega) {
    if (!(omega > 0.0)) throw DomainError("permittivity: omega must be positive");
    const cplx den(mat.omega_1 * mat.omega_1 - omega * omega, -mat.gamma_d * omega);
    return 1.0 + mat.omega_pl * mat.omega_pl / den;
}

cplx cm_polarizability_from_eps(cplx eps, const Geometry& geo) {
    if (eps == cplx(-2.0, 0.0)) throw DomainError("lossless resonance");
    return 3.0 * phys::eps0 * geo.volume() * (eps - 1.0) / (eps + 2.0);
}

cplx cm_polarizability(const MaterialSpec& mat, const Geometry& geo, double omega) {
    return cm_polarizability_from_eps(permittivity(mat, omega), geo);
}

cplx dressed_polarizability(cplx alpha, double omega) {
    const double k = omega * omega * omega / (6.0 * pi * phys::eps0 * phys::c * phys::c * phys::c);
    return alpha / (1.0 - cplx(0.0, 1.0) * alpha * k);
}

double absorption_chi(cplx alpha_tilde, double omega) {
    const double k = omega * omega * omega / (6.0 * pi * phys::eps0 * phys::c * phys::c * phys::c);
    const double im = alpha_tilde.imag();
    const double rad = k * std::norm(alpha_tilde);
    const double chi = im - rad;
    // the difference is a cancellation of two same-sign terms; judge it against their size
    if (chi < -1e-9 * (std::abs(im) + rad)) throw DomainError("active medium");
    return chi > 0.0 ? chi : 0.0;
}

}  // namespace levitherm
