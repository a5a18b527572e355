#include <gtest/gtest.h>

#include <cmath>

#include "levitherm/energy.hpp"
#include "levitherm/propagators.hpp"
#include "levitherm/thermal_kernels.hpp"

using namespace levitherm;

namespace {

ModelParams gold50(double g_over = 1e-8) {
    const double W = reference_row("gold").Omega;
    return match_model(builtin_material("gold"), Geometry::from_nm(50.0), g_over * W);
}

}  // namespace

TEST(ThermalKernels, ItbSpectralDensityShape) {
    const ModelParams p = gold50();
    const double L = p.itb_cutoff;
    EXPECT_NEAR(itb_spectral_density(p, 1e-4 * L) / itb_spectral_density(p, 2e-4 * L), 0.5, 1e-4);
    EXPECT_NEAR(itb_spectral_density(p, L), 2.0 * p.gamma_I / phys::pi * L / std::exp(1.0), 1e-12 * L);
    EXPECT_THROW(itb_spectral_density(p, 0.0), DomainError);
}

TEST(ThermalKernels, EmSpectrumIsOhmicTimesCoth) {
    const ModelParams p = gold50();
    const double b = beta_of(300.0);
    for (double w : {1e12, 1e13, 1e14, 1e15, 1e16})
        EXPECT_NEAR(em_markov_spectrum(p, b, w) / thermal_coth(b, w) / w, p.Gamma_EM(), 1e-12 * p.Gamma_EM());
}

TEST(ThermalKernels, SpectraPositive) {
    const ModelParams p = gold50();
    for (double w = 1e9; w < 1e18; w *= 3.0) {
        EXPECT_GE(em_markov_spectrum(p, beta_of(10.0), w), 0.0);
        EXPECT_GE(itb_noise_spectrum(p, beta_of(10.0), w), 0.0);
    }
}

TEST(ThermalKernels, VacuumAndClassicalLimits) {
    const ModelParams p = gold50();
    const double w = 1e13;
    EXPECT_NEAR(em_markov_spectrum(p, beta_of(1e-3), w), p.Gamma_EM() * w, 1e-12 * p.Gamma_EM() * w);
    const double b = beta_of(1e6);
    EXPECT_NEAR(em_markov_spectrum(p, b, w), 2.0 * p.Gamma_EM() / (b * phys::hbar), 1e-3 * 2.0 * p.Gamma_EM() / (b * phys::hbar));
}

TEST(ThermalKernels, EmToItbRatioAtIdfFrequency) {
    const ModelParams p = gold50();
    const double w = p.omega_theta, bE = beta_of(300.0), bG = beta_of(1000.0);
    const double ratio = em_markov_spectrum(p, bE, w) / itb_noise_spectrum(p, bG, w);
    const double expect = p.Gamma_EM() / (4.0 * p.gamma_I * std::exp(-w / p.itb_cutoff)) * thermal_coth(bE, w) / thermal_coth(bG, w);
    EXPECT_NEAR(ratio / expect, 1.0, 1e-12);
}

TEST(ThermalKernels, NoiseSpectrumDispatch) {
    const ModelParams p = gold50();
    const NoiseSpectrum em{NoiseSource::EM, beta_of(300.0), &p}, itb{NoiseSource::ITB, beta_of(300.0), &p};
    EXPECT_DOUBLE_EQ(em.weight(1e14), em_markov_spectrum(p, beta_of(300.0), 1e14));
    EXPECT_DOUBLE_EQ(itb.weight(1e14), itb_noise_spectrum(p, beta_of(300.0), 1e14));
    EXPECT_TRUE(std::isinf(em.cutoff()));
    EXPECT_DOUBLE_EQ(itb.cutoff(), p.itb_cutoff);
}

TEST(ThermalKernels, OdfKernel) {
    const ModelParams p = gold50();
    const ExpSum Go = to_exp_sum(g_omega_laplace(p));
    const double b = beta_of(1000.0);
    const double pref = phys::hbar * p.omega_theta * p.g * p.g * thermal_coth(b, p.Omega);
    EXPECT_NEAR(odf_initial_kernel(p, b, Go, 0.0, 0.0) / pref, 1.0, 1e-12);
    const double l = 1e-16, m = 3e-16;
    EXPECT_DOUBLE_EQ(odf_initial_kernel(p, b, Go, l, m), odf_initial_kernel(p, b, Go, m, l));
    EXPECT_LT(std::abs(odf_initial_kernel(p, b, Go, 1e-13, 1e-13)), 1e-30 * pref);
    EXPECT_THROW(odf_initial_kernel(p, b, Go, -1.0, 0.0), DomainError);
}

TEST(ThermalKernels, ItbContributionIsSubPercent) {
    // u_inf is linear in the two bath weights, so heating only the internal bath
    // from 1 K to 1000 K bounds its thermal share against the 300 K field
    const ModelParams p = gold50();
    const double cold = u_infinity(p, beta_of(300.0), beta_of(1.0));
    const double hot = u_infinity(p, beta_of(300.0), beta_of(1000.0));
    EXPECT_GT(hot, cold);
    EXPECT_LT((hot - cold) / cold, 0.01);
}
