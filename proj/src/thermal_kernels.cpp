#include "levitherm/thermal_kernels.hpp"

#include <cmath>

namespace levitherm {

double itb_spectral_density(const ModelParams& p, double omega) {
    if (!(omega > 0.0)) throw DomainError("itb_spectral_density: omega must be positive");
    return 2.0 * p.gamma_I / phys::pi * omega * std::exp(-omega / p.itb_cutoff);
}

double em_markov_spectrum(const ModelParams& p, double beta_EM, double omega) {
    if (!(omega > 0.0)) throw DomainError("em_markov_spectrum: omega must be positive");
    return p.Gamma_EM() * omega * thermal_coth(beta_EM, omega);
}

double itb_noise_spectrum(const ModelParams& p, double beta_gamma, double omega) {
    return 2.0 * phys::pi * itb_spectral_density(p, omega) * thermal_coth(beta_gamma, omega);
}

double NoiseSpectrum::weight(double omega) const {
    return source == NoiseSource::EM ? em_markov_spectrum(*params, beta, omega) : itb_noise_spectrum(*params, beta, omega);
}

double NoiseSpectrum::cutoff() const { return source == NoiseSource::ITB ? params->itb_cutoff : INFINITY; }

double odf_initial_kernel(const ModelParams& p, double beta_Omega, const ExpSum& G_Omega, double lambda, double lambda_p) {
    if (lambda < 0.0 || lambda_p < 0.0) throw DomainError("odf_initial_kernel: times must be non-negative");
    const double pref = phys::hbar * p.omega_theta * p.g * p.g * thermal_coth(beta_Omega, p.Omega);
    const double d1 = exp_sum_eval(G_Omega, lambda, 1), d2 = exp_sum_eval(G_Omega, lambda_p, 1);
    const double g1 = exp_sum_eval(G_Omega, lambda, 0), g2 = exp_sum_eval(G_Omega, lambda_p, 0);
    return pref * (d1 * d2 + p.Omega * p.Omega * g1 * g2);
}

}  // namespace levitherm
