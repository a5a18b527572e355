// thermal_kernels.hpp - bath spectra and the optical-oscillator initial-state kernel
//
// Mass reduction: the internal energy only needs
//   (3/2) * integral [dG N dG + w_theta^2 G N G]
// with N divided by m_theta. The optical coordinate enters through q^2/m_Omega
// and the coupling through 2 Omega w_theta g^2 = lambda^2/(m_theta m_Omega),
// so every kernel below is written without any standalone mass. Bath spectra are
// symmetrized force spectra divided by hbar m_Omega.
#pragma once

#include "levitherm/exp_sum.hpp"
#include "levitherm/matching.hpp"

namespace levitherm {

enum class NoiseSource { EM, ITB };

// (2 gamma_I / pi) w exp(-w/Lambda)
double itb_spectral_density(const ModelParams& p, double omega);

// Gamma_EM w coth(beta hbar w/2): Ohmic after the Markov replacement
double em_markov_spectrum(const ModelParams& p, double beta_EM, double omega);

// 2 pi J(w) coth(beta hbar w/2) = 4 gamma_I w f_c(w) coth(beta hbar w/2)
double itb_noise_spectrum(const ModelParams& p, double beta_gamma, double omega);

struct NoiseSpectrum {
    NoiseSource source;
    double beta;
    const ModelParams* params;

    double weight(double omega) const;
    double cutoff() const;  // ITB Lambda; EM has none in the Markov form
};

// hbar w_theta g^2 coth(beta hbar Omega/2) [dG(l) dG(l') + Omega^2 G(l) G(l')]
double odf_initial_kernel(const ModelParams& p, double beta_Omega, const ExpSum& G_Omega, double lambda, double lambda_p);

}  // namespace levitherm
