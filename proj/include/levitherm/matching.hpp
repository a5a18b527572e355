// matching.hpp - minimal-model parameters matched to optical data
#pragma once

#include <string>
#include <vector>

#include "levitherm/materials.hpp"

namespace levitherm {

struct ModelParams {
    double Omega = 0.0;        // optical oscillator frequency, rad/s
    double omega_theta = 0.0;  // internal oscillator frequency, rad/s
    double g = 0.0;            // optical-internal coupling rate, rad/s
    double gamma_I = 0.0;      // optical-internal bath rate, rad/s
    double q2_over_m = 0.0;    // C^2/kg
    double itb_cutoff = 0.0;   // internal-bath cutoff Lambda, rad/s
    double em_cutoff = 0.0;    // exponential cutoff of the Markov EM noise, rad/s
    double volume = 0.0;       // m^3

    double omega_q() const;   // 6 pi c^3 eps0 / (q^2/m)
    double Gamma_EM() const;  // Omega^2 / omega_q
    double Gamma() const { return Gamma_EM() + 4.0 * gamma_I; }

    // hard invariants throw; regime violations are returned as warnings
    std::vector<std::string> validate() const;
};

struct TemperatureSet {
    double T_EM = 300.0;
    double T_Omega = 1000.0;
    double T_theta = 1000.0;
    double T_gamma = 1000.0;

    static TemperatureSet uniform(double T) { return {T, T, T, T}; }
    void validate() const;
    double beta_EM() const { return beta_of(T_EM); }
    double beta_Omega() const { return beta_of(T_Omega); }
    double beta_theta() const { return beta_of(T_theta); }
    double beta_gamma() const { return beta_of(T_gamma); }
    bool operator==(const TemperatureSet&) const = default;
};

inline constexpr double default_itb_cutoff_factor = 50.0;   // Lambda = 50 w_theta
inline constexpr double default_em_cutoff_factor = 100.0;  // Lambda_EM = 100 max(Omega, Gamma)

// gamma_I = gamma_D/4, q^2/m = eps0 V w_pl^2, w_theta = kB Theta_E/hbar and
// Omega from w_pl^2/3 + w_1^2 = Omega^2 + 2 w_theta g^2 / Omega (Newton).
ModelParams match_model(const MaterialSpec& mat, const Geometry& geo, double g);

// Model rows quoted for gold and silica: Omega, gamma_I/Omega, q^2/m per nm^3, w_theta/Omega.
struct ReferenceRow {
    std::string name;
    double Omega;
    double gamma_I_over_Omega;
    double q2m_per_nm3;
    double omega_theta_over_Omega;
    double g_max_over_Omega;
};
ReferenceRow reference_row(const std::string& name);
ModelParams reference_params(const std::string& name, const Geometry& geo, double g);

// (w_theta/Omega) sqrt((2/pi)(gamma_I/Omega)(delta/w_theta)) Omega
double g_upper_bound(const ModelParams& p, double delta);
double g_upper_bound(const ModelParams& p);  // delta = w_theta/2

struct CouplingRatio {
    double ratio;
    bool weak;  // ratio < 1e-2
};
// (kB T/hbar Omega)^2 sqrt(V w_pl^2 Omega / (2 pi c^3)); w_pl^2 recovered from q^2/m
CouplingRatio em_coupling_ratio(const ModelParams& p, double T_EM);

cplx model_polarizability(const ModelParams& p, double omega);
cplx optical_range_polarizability(const ModelParams& p, double omega);

double phonon_frequency_scale(double R, double c_s);

}  // namespace levitherm
