#include "levitherm/matching.hpp"

#include <algorithm>
#include <cmath>

namespace levitherm {

using phys::pi;

double ModelParams::omega_q() const {
    return 6.0 * pi * phys::c * phys::c * phys::c * phys::eps0 / q2_over_m;
}

double ModelParams::Gamma_EM() const { return Omega * Omega / omega_q(); }

std::vector<std::string> ModelParams::validate() const {
    if (!(Omega > 0.0 && omega_theta > 0.0)) throw DomainError("model frequencies must be positive");
    if (!(g >= 0.0)) throw DomainError("coupling g must be non-negative");
    if (!(gamma_I > 0.0 && q2_over_m > 0.0)) throw DomainError("gamma_I and q^2/m must be positive");
    if (!(itb_cutoff > 0.0 && em_cutoff > 0.0)) throw DomainError("bath cutoffs must be positive");
    if (!(g < omega_theta && omega_theta < Omega)) throw DomainError("model requires g < omega_theta < Omega");
    std::vector<std::string> warn;
    if (g > 0.1 * omega_theta) warn.push_back("g/omega_theta exceeds 0.1");
    if (omega_theta > 0.1 * Omega) warn.push_back("omega_theta/Omega exceeds 0.1");
    if (!(Gamma() < Omega)) warn.push_back("optical oscillator is overdamped (Gamma_EM + 4 gamma_I >= Omega)");
    return warn;
}

void TemperatureSet::validate() const {
    if (!(T_EM > 0.0 && T_Omega > 0.0 && T_theta > 0.0 && T_gamma > 0.0))
        throw DomainError("all temperatures must be positive");
}

namespace {

void set_cutoffs(ModelParams& p) {
    p.itb_cutoff = default_itb_cutoff_factor * p.omega_theta;
    p.em_cutoff = default_em_cutoff_factor * std::max(p.Omega, p.Gamma());
}

}  // namespace

ModelParams match_model(const MaterialSpec& mat, const Geometry& geo, double g) {
    mat.validate();
    if (!(g > 0.0)) throw DomainError("match_model: g must be positive");
    ModelParams p;
    p.g = g;
    p.volume = geo.volume();
    p.gamma_I = mat.gamma_d / 4.0;
    p.q2_over_m = phys::eps0 * p.volume * mat.omega_pl * mat.omega_pl;
    p.omega_theta = phys::kB * mat.theta_E / phys::hbar;

    // f(W) = W^2 + c/W - rhs, c = 2 w_theta g^2; root near sqrt(rhs)
    const double rhs = mat.omega_pl * mat.omega_pl / 3.0 + mat.omega_1 * mat.omega_1;
    const double c = 2.0 * p.omega_theta * g * g;
    double W = std::sqrt(rhs);
    for (int it = 0; it < 100; ++it) {
        const double f = W * W + c / W - rhs;
        const double df = 2.0 * W - c / (W * W);
        if (!(df > 0.0)) throw DomainError("unphysical coupling");
        const double Wn = W - f / df;
        if (!(Wn > 0.0)) throw DomainError("unphysical coupling");
        const bool done = std::abs(Wn - W) <= 1e-15 * W;
        W = Wn;
        if (done) break;
    }
    if (!(std::abs(W * W + c / W - rhs) <= 1e-12 * rhs)) throw DomainError("unphysical coupling");
    p.Omega = W;
    set_cutoffs(p);
    p.validate();
    return p;
}

ReferenceRow reference_row(const std::string& name) {
    if (name == "gold") return {"gold", 2.0 * pi * 1.57e15, 1e-3, 1.08e-5, 1.8e-3, 3.2e-5};
    if (name == "silica") return {"silica", 2.0 * pi * 3.39e15, 1.8e-3, 5.13e-5, 2e-3, 4.8e-5};
    throw DomainError("no reference row for material '" + name + "'");
}

ModelParams reference_params(const std::string& name, const Geometry& geo, double g) {
    const ReferenceRow r = reference_row(name);
    const double Rnm = geo.radius * 1e9;
    ModelParams p;
    p.Omega = r.Omega;
    p.omega_theta = r.omega_theta_over_Omega * r.Omega;
    p.g = g;
    p.gamma_I = r.gamma_I_over_Omega * r.Omega;
    p.q2_over_m = r.q2m_per_nm3 * Rnm * Rnm * Rnm;
    p.volume = geo.volume();
    set_cutoffs(p);
    return p;
}

double g_upper_bound(const ModelParams& p, double delta) {
    if (!(delta > 0.0 && delta <= 0.5 * p.omega_theta * (1.0 + 1e-12)))
        throw DomainError("g_upper_bound: delta must lie in (0, omega_theta/2]");
    const double r = p.omega_theta / p.Omega;
    return r * std::sqrt(2.0 / pi * (p.gamma_I / p.Omega) * (delta / p.omega_theta)) * p.Omega;
}

double g_upper_bound(const ModelParams& p) { return g_upper_bound(p, 0.5 * p.omega_theta); }

CouplingRatio em_coupling_ratio(const ModelParams& p, double T_EM) {
    if (!(T_EM > 0.0)) throw DomainError("em_coupling_ratio: T_EM must be positive");
    const double x = phys::kB * T_EM / (phys::hbar * p.Omega);
    // V w_pl^2 = (q^2/m)/eps0
    const double vw2 = p.q2_over_m / phys::eps0;
    const double r = x * x * std::sqrt(vw2 * p.Omega / (2.0 * pi * phys::c * phys::c * phys::c));
    return {r, r < 1e-2};
}

cplx model_polarizability(const ModelParams& p, double omega) {
    if (!(omega > 0.0)) throw DomainError("model_polarizability: omega must be positive");
    if (std::abs(omega - p.omega_theta) < 1e-9 * p.omega_theta) throw DomainError("IDF pole");
    const double w2 = omega * omega;
    const double idf = 2.0 * p.Omega * p.omega_theta * p.g * p.g / ((omega - p.omega_theta) * (omega + p.omega_theta));
    const cplx den(p.Omega * p.Omega - w2 + idf, -4.0 * p.gamma_I * omega);
    return p.q2_over_m / den;
}

cplx optical_range_polarizability(const ModelParams& p, double omega) {
    const double w2 = omega * omega;
    const cplx den(p.Omega * p.Omega - w2 + 2.0 * p.omega_theta * p.g * p.g / p.Omega, -4.0 * p.gamma_I * omega);
    return p.q2_over_m / den;
}

double phonon_frequency_scale(double R, double c_s) {
    if (!(R > 0.0 && c_s > 0.0)) throw DomainError("phonon_frequency_scale: R and c_s must be positive");
    return pi * c_s / R;
}

}  // namespace levitherm
