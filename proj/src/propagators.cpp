#include "levitherm/propagators.hpp"

#include <algorithm>
#include <cmath>

namespace levitherm {

const char* kernel_name(KernelLabel k) {
    switch (k) {
        case KernelLabel::G_Omega: return "G_Omega";
        case KernelLabel::G_theta: return "G_theta";
        case KernelLabel::G_theta_free: return "G_theta_free";
        case KernelLabel::H_theta_free: return "H_theta_free";
        case KernelLabel::G_NP: return "G_NP";
        case KernelLabel::Custom: return "custom";
    }
    return "custom";
}

namespace {

const cplx I(0.0, 1.0);

ExpTerm pole_term(cplx s) { return ExpTerm{0.0, s, 0.0, 0}; }

// Roots of s^2 + G s + W^2 without cancellation.
std::vector<cplx> quadratic_poles(double G, double W) {
    const double h = 0.5 * G;
    const double disc = h * h - W * W;
    if (disc < 0.0) {
        const double w = std::sqrt(-disc);
        return {cplx(-h, w), cplx(-h, -w)};
    }
    if (disc == 0.0) return {cplx(-h), cplx(-h)};
    const double q1 = -(h + std::sqrt(disc));
    return {cplx(q1), cplx(W * W / q1)};
}

Poly odf_poly(const ModelParams& p, double damping) { return Poly{{p.Omega * p.Omega, damping, 1.0}}; }

// Poles of (s^2 + wt^2)(s - q1)(s - q2) - c by Newton in factored form, so a
// pole displaced by |delta| << wt from -i wt keeps delta to full relative accuracy.
bool structured_theta_poles(double wt, cplx q1, cplx q2, double c, std::vector<ExpTerm>& out) {
    if (q1 == q2) return false;
    auto Q = [&](cplx s) { return (s - q1) * (s - q2); };
    auto dQ = [&](cplx s) { return 2.0 * s - q1 - q2; };

    // slow pair: s = -i wt + d
    cplx d = c / ((-2.0 * I * wt) * Q(-I * wt));
    if (!(std::abs(d) < 0.05 * wt)) return false;
    for (int it = 0; it < 50; ++it) {
        const cplx s = cplx(d.real(), d.imag() - wt);
        const cplx a = d * (d - 2.0 * I * wt);
        const cplx F = a * Q(s) - c;
        const cplx dF = (2.0 * d - 2.0 * I * wt) * Q(s) + a * dQ(s);
        const cplx step = F / dF;
        d -= step;
        if (std::abs(step) <= 1e-15 * std::abs(d)) break;
    }
    out.push_back(ExpTerm{0.0, d, -wt, 0});
    out.push_back(ExpTerm{0.0, std::conj(d), wt, 0});

    // optical pair: s = q_k + e
    for (int k = 0; k < 2; ++k) {
        const cplx qk = k == 0 ? q1 : q2, qo = k == 0 ? q2 : q1;
        cplx e = c / ((qk * qk + wt * wt) * (qk - qo));
        if (!(std::abs(e) < 0.05 * std::abs(qk - qo))) return false;
        for (int it = 0; it < 50; ++it) {
            const cplx s = qk + e;
            const cplx P = s * s + wt * wt;
            const cplx F = P * e * (s - qo) - c;
            const cplx dF = 2.0 * s * e * (s - qo) + P * (2.0 * e + qk - qo);
            const cplx step = F / dF;
            e -= step;
            if (std::abs(step) <= 1e-15 * std::abs(e) || e == 0.0) break;
        }
        cplx s = qk + e;
        if (qk.imag() == 0.0) s = cplx(s.real(), 0.0);
        out.push_back(pole_term(s));
    }
    return true;
}

}  // namespace

LaplaceKernel g_omega_laplace(const ModelParams& p) {
    LaplaceKernel k;
    k.label = KernelLabel::G_Omega;
    k.numerator = Poly{{1.0}};
    k.denominator = odf_poly(p, p.Gamma());
    for (cplx s : quadratic_poles(p.Gamma(), p.Omega)) k.known_poles.push_back(pole_term(s));
    return k;
}

LaplaceKernel g_theta_laplace(const ModelParams& p) {
    const double wt = p.omega_theta;
    const double c = 2.0 * p.Omega * wt * p.g * p.g;
    const Poly Q = odf_poly(p, p.Gamma());
    LaplaceKernel k;
    k.label = KernelLabel::G_theta;
    k.numerator = Q;
    k.denominator = Poly{{wt * wt, 0.0, 1.0}} * Q + Poly{{-c}};

    const auto q = quadratic_poles(p.Gamma(), p.Omega);
    if (c == 0.0) {
        k.known_poles = {ExpTerm{0.0, 0.0, -wt, 0}, ExpTerm{0.0, 0.0, wt, 0}, pole_term(q[0]), pole_term(q[1])};
    } else if (!structured_theta_poles(wt, q[0], q[1], c, k.known_poles)) {
        k.known_poles.clear();
        for (cplx s : roots(k.denominator)) k.known_poles.push_back(pole_term(s));
    }
    for (const auto& t : k.known_poles)
        if (!(t.offset.real() < 0.0) && !(c == 0.0 && t.offset == 0.0))
            throw DomainError("unstable matched model");
    return k;
}

cplx g_np_value(const ModelParams& p, cplx s) {
    const double wt = p.omega_theta;
    return 1.0 / (s * s + p.Omega * p.Omega + 4.0 * p.gamma_I * s - 2.0 * p.Omega * wt * p.g * p.g / ((s - I * wt) * (s + I * wt)));
}

LaplaceKernel g_np_laplace(const ModelParams& p) {
    const double wt = p.omega_theta;
    const Poly P{{wt * wt, 0.0, 1.0}};
    LaplaceKernel k;
    k.label = KernelLabel::G_NP;
    k.numerator = P;
    k.denominator = P * odf_poly(p, 4.0 * p.gamma_I) + Poly{{-2.0 * p.Omega * wt * p.g * p.g}};
    const auto q = quadratic_poles(4.0 * p.gamma_I, p.Omega);
    if (!structured_theta_poles(wt, q[0], q[1], 2.0 * p.Omega * wt * p.g * p.g, k.known_poles)) {
        k.known_poles.clear();
        for (cplx s : roots(k.denominator)) k.known_poles.push_back(pole_term(s));
    }
    return k;
}

FreeIdfKernels free_idf_kernels(const ModelParams& p, double beta_theta) {
    const double wt = p.omega_theta;
    const double ct = thermal_coth(beta_theta, wt);
    FreeIdfKernels out;
    out.G.label = KernelLabel::G_theta_free;
    out.G.numerator = Poly{{1.0}};
    out.G.denominator = Poly{{wt * wt, 0.0, 1.0}};
    out.G.known_poles = {ExpTerm{0.0, 0.0, -wt, 0}, ExpTerm{0.0, 0.0, wt, 0}};
    out.H.label = KernelLabel::H_theta_free;
    out.H.numerator = Poly{{0.0, ct / wt}};
    out.H.denominator = out.G.denominator;
    out.H.known_poles = out.G.known_poles;
    return out;
}

ExpSum to_exp_sum(const LaplaceKernel& k) {
    const int dn = k.denominator.degree();
    if (dn < 0) throw DomainError("empty polynomial");
    if (k.numerator.degree() >= dn) throw DomainError("to_exp_sum: kernel must be strictly proper");

    std::vector<ExpTerm> poles = k.known_poles;
    if (poles.empty())
        for (cplx s : roots(k.denominator)) poles.push_back(pole_term(s));

    const Poly d1 = k.denominator.derivative();
    const Poly d2 = d1.derivative();
    const Poly d3 = d2.derivative();
    const Poly n1 = k.numerator.derivative();

    double scale = 0.0;
    for (const auto& t : poles) scale = std::max(scale, std::abs(t.pole()));
    const double tol = 1e-9 * std::max(scale, 1e-300);

    ExpSum f;
    std::vector<bool> used(poles.size(), false);
    for (std::size_t i = 0; i < poles.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        std::size_t twin = poles.size();
        for (std::size_t j = i + 1; j < poles.size(); ++j) {
            if (used[j]) continue;
            const cplx diff = (poles[i].offset - poles[j].offset) + cplx(0.0, poles[i].anchor - poles[j].anchor);
            if (std::abs(diff) <= tol) { twin = j; break; }
        }
        ExpTerm t = poles[i];
        const cplx s = t.pole();
        if (twin == poles.size()) {
            t.residue = k.numerator(s) / d1(s);
            f.add(t);
        } else {
            // D = (s - p)^2 R: R(p) = D''(p)/2, R'(p) = D'''(p)/6
            used[twin] = true;
            const cplx R = 0.5 * d2(s), dR = d3(s) / 6.0;
            const cplx N = k.numerator(s), dN = n1(s);
            ExpTerm t1 = t;
            t1.power = 1;
            t1.residue = N / R;
            f.add(t1);
            t.residue = dN / R - N * dR / (R * R);
            f.add(t);
        }
    }
    return f;
}

RrPoles rr_poles(const ModelParams& p) {
    const double g_rr = 1.0 / p.omega_q();
    RrPoles out;
    out.roots = roots(Poly{{p.Omega * p.Omega, 0.0, 1.0, -g_rr}});
    for (std::size_t i = 0; i < out.roots.size(); ++i) {
        if (out.roots[i].real() > 0.0) {
            ++out.right_half_plane_count;
            out.runaway_index = static_cast<int>(i);
        }
    }
    return out;
}

double markov_damping(const ModelParams& p) {
    return p.q2_over_m * p.Omega * p.Omega / (6.0 * phys::pi * phys::c * phys::c * phys::c * phys::eps0);
}

double kappa_slow(const ModelParams& p) { return to_exp_sum(g_theta_laplace(p)).slowest_rate(); }

}  // namespace levitherm
