// propagators.hpp - Laplace-domain kernels of the coupled oscillators and their residue inversion
#pragma once

#include <vector>

#include "levitherm/exp_sum.hpp"
#include "levitherm/matching.hpp"
#include "levitherm/poly.hpp"

namespace levitherm {

enum class KernelLabel { G_Omega, G_theta, G_theta_free, H_theta_free, G_NP, Custom };

const char* kernel_name(KernelLabel k);

struct LaplaceKernel {
    Poly numerator;
    Poly denominator;
    KernelLabel label = KernelLabel::Custom;
    // Optional poles already known to high accuracy (offset/anchor form); when
    // present they replace the generic root finder in to_exp_sum.
    std::vector<ExpTerm> known_poles;

    cplx operator()(cplx s) const { return numerator(s) / denominator(s); }
};

// 1/(s^2 + Gamma s + Omega^2), Gamma = Gamma_EM + 4 gamma_I
LaplaceKernel g_omega_laplace(const ModelParams& p);

// (s^2 + Gamma s + Omega^2) / [(s^2 + w_theta^2)(s^2 + Gamma s + Omega^2) - 2 Omega w_theta g^2]
// Throws "unstable matched model" when a pole has Re >= 0.
LaplaceKernel g_theta_laplace(const ModelParams& p);

// 1/[s^2 + Omega^2 + 4 gamma_I s - 2 Omega w_theta g^2/(s^2 + w_theta^2)]
LaplaceKernel g_np_laplace(const ModelParams& p);
cplx g_np_value(const ModelParams& p, cplx s);

struct FreeIdfKernels {
    LaplaceKernel G;  // 1/(s^2 + w_theta^2)
    LaplaceKernel H;  // coth(beta hbar w_theta/2) s / (w_theta (s^2 + w_theta^2))
};
FreeIdfKernels free_idf_kernels(const ModelParams& p, double beta_theta);

// Partial fractions N(p)/D'(p) at each pole; double poles give t e^{pt} terms.
ExpSum to_exp_sum(const LaplaceKernel& k);

struct RrPoles {
    std::vector<cplx> roots;
    int runaway_index = -1;  // the single root with Re > 0, -1 if none
    int right_half_plane_count = 0;
};
// Roots of -s^3/omega_q + s^2 + Omega^2 (radiation-reaction characteristic cubic).
RrPoles rr_poles(const ModelParams& p);

// Gamma_EM = (q^2/m) Omega^2 / (6 pi c^3 eps0)
double markov_damping(const ModelParams& p);

// Slowest decay rate of G_theta, |max Re pole|.
double kappa_slow(const ModelParams& p);

}  // namespace levitherm
