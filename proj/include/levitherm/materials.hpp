// materials.hpp - Drude-Lorentz permittivity, sphere polarizabilities, material database
#pragma once

#include <string>
#include <vector>

#include "levitherm/core.hpp"

namespace levitherm {

struct MaterialSpec {
    std::string name;
    double omega_pl = 0.0;  // plasma frequency, rad/s
    double omega_1 = 0.0;   // Drude-Lorentz resonance, rad/s (0 for metals)
    double gamma_d = 0.0;   // damping, rad/s
    double theta_E = 0.0;   // Einstein temperature, K
    double rho = 0.0;       // kg/m^3
    double c_bulk = 0.0;    // J/(kg K)
    double c_sound = 0.0;   // m/s

    void validate() const;
    bool operator==(const MaterialSpec&) const = default;
};

struct Geometry {
    double radius = 0.0;  // m

    explicit Geometry(double radius_m);
    static Geometry from_nm(double radius_nm) { return Geometry(radius_nm * 1e-9); }
    double volume() const;
    // the point-dipole picture is strained above this radius
    bool beyond_dipole_regime() const { return radius > 300e-9 * (1.0 + 1e-12); }
};

MaterialSpec gold();
MaterialSpec silica();

// JSON document: array of objects, or an object with a "materials" array.
std::vector<MaterialSpec> load_material_db(const std::string& path);
std::vector<MaterialSpec> parse_material_db(const std::string& json_text);
MaterialSpec builtin_material(const std::string& name);

// 1 + w_pl^2 / (w_1^2 - w^2 - i g_D w)
cplx permittivity(const MaterialSpec& mat, double omega);

// 3 eps0 V (eps - 1)/(eps + 2)
cplx cm_polarizability(const MaterialSpec& mat, const Geometry& geo, double omega);
cplx cm_polarizability_from_eps(cplx eps, const Geometry& geo);

// alpha / (1 - i alpha w^3 / (6 pi eps0 c^3))
cplx dressed_polarizability(cplx alpha, double omega);

// Im(alpha~) - w^3 |alpha~|^2 / (6 pi eps0 c^3); throws "active medium" if negative
double absorption_chi(cplx alpha_tilde, double omega);

}  // namespace levitherm
