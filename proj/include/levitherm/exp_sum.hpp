// exp_sum.hpp - causal kernels as finite sums of (t^k) exp(s t) terms
#pragma once

#include <vector>

#include "levitherm/core.hpp"

namespace levitherm {

// One term c * t^power * exp(s t). The pole is stored as s = offset + i*anchor
// so that poles sitting extremely close to a real frequency keep their small
// offset at full relative precision.
struct ExpTerm {
    cplx residue;
    cplx offset;
    double anchor = 0.0;
    int power = 0;  // 0 or 1

    cplx pole() const { return offset + cplx(0.0, anchor); }
};

// f(t) = sum_j c_j t^{k_j} e^{s_j t} for t >= 0, zero for t < 0.
struct ExpSum {
    std::vector<ExpTerm> terms;

    static ExpSum from_poles(const std::vector<cplx>& residues, const std::vector<cplx>& poles);
    void add(cplx residue, cplx pole, int power = 0);
    void add(const ExpTerm& term);

    double max_real_pole() const;
    double slowest_rate() const;  // |max Re s| over all terms
    ExpSum derivative() const;    // exact when f(0) = 0 (adds no delta term)
    ExpSum scaled(cplx k) const;
};

// Re sum c s^k e^{st} (k = 0, 1, 2), zero for t < 0.
double exp_sum_eval(const ExpSum& f, double t, int deriv_order = 0);
cplx exp_sum_eval_complex(const ExpSum& f, double t, int deriv_order = 0);

// Closed-form (f*g)(t) = int_0^t f(t-u) g(u) du. Poles closer than
// 1e-9 max|pole| are merged into a t e^{st} term.
ExpSum convolve(const ExpSum& f, const ExpSum& g);

// Phi(omega, t) = int_0^t f(u) e^{i omega u} du, with omega = base + nu.
// Splitting the frequency keeps base + anchor exact for anchored poles.
cplx windowed_fourier(const ExpSum& f, double omega, double t);
cplx windowed_fourier(const ExpSum& f, double omega_base, double nu, double t);

// Laplace transform sum c k!/(s - p)^{k+1}; with s = -i omega it is the t -> infinity window.
cplx laplace_value(const ExpSum& f, cplx s);
cplx laplace_at_frequency(const ExpSum& f, double omega_base, double nu);

}  // namespace levitherm
