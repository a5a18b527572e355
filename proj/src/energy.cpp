#include "levitherm/energy.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "levitherm/propagators.hpp"

namespace levitherm {

namespace {

constexpr double inv_two_pi = 1.0 / (2.0 * phys::pi);

// Index of the power-0 term sitting on the slow resonance near +w_theta, or -1.
int slow_term(const ExpSum& f, double wt) {
    for (std::size_t i = 0; i < f.terms.size(); ++i)
        if (f.terms[i].anchor == -wt && f.terms[i].power == 0) return static_cast<int>(i);
    return -1;
}

// Split points nu_p +- width 4^k inside (lo, hi).
std::vector<double> peak_splits(double nu_p, double width, double lo, double hi) {
    std::vector<double> s;
    if (nu_p > lo && nu_p < hi) s.push_back(nu_p);
    if (width > 0.0) {
        for (double d = width; d < hi - lo; d *= 4.0) {
            if (nu_p - d > lo && nu_p - d < hi) s.push_back(nu_p - d);
            if (nu_p + d > lo && nu_p + d < hi) s.push_back(nu_p + d);
        }
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::vector<double> high_splits(const ModelParams& p, double lo) {
    std::vector<double> s;
    for (double w : {p.Omega, p.Gamma(), std::hypot(p.Omega, 0.5 * p.Gamma()), p.itb_cutoff})
        if (w > lo) s.push_back(w);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

QuadratureSpec budget_of(const QuadratureSpec& q) {
    QuadratureSpec s;
    s.rel_tol = q.rel_tol;
    s.abs_tol = q.abs_tol;
    s.max_subdivisions = q.max_subdivisions;
    return s;
}

// Above the peak window Phi(w, t) = P(w) + e^{iwt} Q(w, t) with P and Q smooth
// in w, so the cos(wt) cross term can go to a Fourier-type rule.
void window_split(const ExpSum& f, double omega, double t, cplx& P, cplx& Q) {
    P = 0.0;
    Q = 0.0;
    for (const auto& term : f.terms) {
        const cplx z = term.offset + cplx(0.0, term.anchor + omega);
        const cplx est = std::exp(term.offset * t) * std::polar(1.0, term.anchor * t);
        if (term.power == 0) {
            P -= term.residue / z;
            Q += term.residue * est / z;
        } else {
            P += term.residue / (z * z);
            Q += term.residue * est * (z * t - 1.0) / (z * z);
        }
    }
}

double bath_weight(const ModelParams& p, const TemperatureSet& T, double omega) {
    double w = p.Gamma_EM() * omega * thermal_coth(T.beta_EM(), omega) * std::exp(-omega / p.em_cutoff);
    if (p.gamma_I > 0.0)
        w += 4.0 * p.gamma_I * omega * std::exp(-omega / p.itb_cutoff) * thermal_coth(T.beta_gamma(), omega);
    return w;
}

// the split form is used once the high segment holds many periods of cos(wt)
constexpr double split_high_periods = 30.0;

// Slow-resonance position and width of G_theta, read off its anchored pole.
void slow_resonance(const ExpSum& Gt, double wt, double& nu_p, double& kappa) {
    nu_p = 0.0;
    kappa = Gt.slowest_rate();
    const int i = slow_term(Gt, wt);
    if (i >= 0) {
        nu_p = -Gt.terms[i].offset.imag();
        kappa = -Gt.terms[i].offset.real();
    }
}

// Integrand of the stationary limit: (omega^2 + w_theta^2) |G_theta|^2 |G_Omega|^2 times
// the bath weight, with G_theta(-i w) = 1/[-nu(2 w_theta + nu) - c G_Omega(-i w)].
struct StationaryIntegrand {
    const ModelParams& p;
    double beta_EM, beta_gamma;
    bool dbeta;  // replace coth_EM by d coth_EM/d beta and drop the bath term

    double operator()(double omega, double nu) const {
        if (!(omega > 0.0)) return 0.0;
        const double wt = p.omega_theta;
        const double c = 2.0 * p.Omega * wt * p.g * p.g;
        const cplx Go = 1.0 / cplx(p.Omega * p.Omega - omega * omega, -p.Gamma() * omega);
        const cplx Gt = 1.0 / (-nu * (2.0 * wt + nu) - c * Go);
        double w;
        if (dbeta) {
            w = p.Gamma_EM() * omega * thermal_coth_dbeta(beta_EM, omega);
        } else {
            w = p.Gamma_EM() * omega * thermal_coth(beta_EM, omega);
            if (p.gamma_I > 0.0)
                w += 4.0 * p.gamma_I * omega * std::exp(-omega / p.itb_cutoff) * thermal_coth(beta_gamma, omega);
        }
        const double pref = 6.0 * phys::hbar * wt * p.g * p.g * p.Omega * inv_two_pi;
        return pref * w * (omega * omega + wt * wt) * std::norm(Gt) * std::norm(Go);
    }
};

double stationary_integral(const ModelParams& p, const StationaryIntegrand& f, const QuadratureSpec& quad) {
    p.validate();
    quad.validate();
    const double wt = p.omega_theta;
    const ExpSum Gt = to_exp_sum(g_theta_laplace(p));
    double nu_p, kappa;
    slow_resonance(Gt, wt, nu_p, kappa);

    std::vector<QuadSegment> segs;
    segs.push_back(QuadSegment{[&](double w) { return f(w, w - wt); }, 0.0, 0.5 * wt, {}, 0.0});
    segs.push_back(QuadSegment{[&](double nu) { return f(wt + nu, nu); }, -0.5 * wt, 0.5 * wt,
                               peak_splits(nu_p, kappa, -0.5 * wt, 0.5 * wt), 0.0});
    segs.push_back(QuadSegment{[&](double w) { return f(w, w - wt); }, 1.5 * wt, INFINITY, high_splits(p, 1.5 * wt),
                               std::max(p.Omega, p.Gamma())});
    return quad_segments(segs, budget_of(quad));
}

}  // namespace

QuadratureSpec default_energy_quad() {
    QuadratureSpec q;
    q.rel_tol = 1e-6;
    q.max_subdivisions = 20000;
    return q;
}

EnergyModel::EnergyModel(const ModelParams& p, const TemperatureSet& temps, const QuadratureSpec& quad)
    : p_(p), temps_(temps), quad_(quad) {
    p_.validate();
    temps_.validate();
    quad_.validate();
    Gt_ = to_exp_sum(g_theta_laplace(p_));
    dGt_ = Gt_.derivative();
    Go_ = to_exp_sum(g_omega_laplace(p_));
    dGo_ = Go_.derivative();
    A_ = convolve(dGt_, dGo_);
    B_ = convolve(dGt_, Go_);
    C_ = convolve(Gt_, dGo_);
    D_ = convolve(Gt_, Go_);
    H_ = convolve(Go_, Gt_);
    slow_resonance(Gt_, p_.omega_theta, nu_peak_, kappa_);
}

double EnergyModel::u0() const { return initial_energy(p_, temps_.beta_theta()); }

double EnergyModel::bath_integrand(double base, double nu, double t) const {
    const double omega = base + nu;
    if (!(omega > 0.0)) return 0.0;
    const double wt = p_.omega_theta;
    const double w = bath_weight(p_, temps_, omega);
    const cplx b = windowed_fourier(B_, base, nu, t);
    const cplx d = windowed_fourier(D_, base, nu, t);
    const double pref = 6.0 * phys::hbar * p_.Omega * wt * p_.g * p_.g * inv_two_pi;
    return pref * w * (std::norm(b) + wt * wt * std::norm(d));
}

// Gt = Gf + c Gf*H with Gf = sin(w_theta t)/w_theta. Gf alone keeps the
// bracket G''^2 + 2w^2 G'^2 + w^4 G^2 at exactly 2w^2, so only deviations are summed.
double EnergyModel::relaxation_shift(double t) const {
    if (t == 0.0) return 0.0;
    const double wt = p_.omega_theta;
    const double c = 2.0 * p_.Omega * wt * p_.g * p_.g;
    // (Gf^(k) * H)(t) = Re sum_A r_A (iA)^k e^{iAt} int_0^t H(u) e^{-iAu} du, r_A = 1/(2iA)
    double conv[3] = {0.0, 0.0, 0.0};
    for (double A : {wt, -wt}) {
        const cplx base = windowed_fourier(H_, -A, 0.0, t) * std::polar(1.0, A * t) / cplx(0.0, 2.0 * A);
        conv[0] += base.real();
        conv[1] += (base * cplx(0.0, A)).real();
        conv[2] += (base * cplx(0.0, A) * cplx(0.0, A)).real();
    }
    const double d0 = c * conv[0], d1 = c * conv[1], d2 = c * (conv[2] + exp_sum_eval(H_, t));
    const double s = std::sin(wt * t), co = std::cos(wt * t);
    const double f0 = s / wt, f1 = co, f2 = -wt * s;
    const double bracket = d2 * (2.0 * f2 + d2) + 2.0 * wt * wt * d1 * (2.0 * f1 + d1) + wt * wt * wt * wt * d0 * (2.0 * f0 + d0);
    return 0.75 * phys::hbar / wt * thermal_coth(temps_.beta_theta(), wt) * bracket;
}

EnergyParts EnergyModel::parts(double t) const {
    if (!(t >= 0.0)) throw DomainError("internal_energy: t must be non-negative");
    const double wt = p_.omega_theta;
    EnergyParts out;

    const double g0 = exp_sum_eval(Gt_, t, 0), g1 = exp_sum_eval(Gt_, t, 1), g2 = exp_sum_eval(Gt_, t, 2);
    out.relaxation = 0.75 * phys::hbar / wt * thermal_coth(temps_.beta_theta(), wt) *
                     (g2 * g2 + 2.0 * wt * wt * g1 * g1 + wt * wt * wt * wt * g0 * g0);
    out.relaxation_shift = relaxation_shift(t);
    if (t == 0.0) return out;

    const double a = exp_sum_eval(A_, t), b = exp_sum_eval(B_, t), c = exp_sum_eval(C_, t), d = exp_sum_eval(D_, t);
    const double W2 = p_.Omega * p_.Omega;
    out.odf = 1.5 * phys::hbar * wt * p_.g * p_.g * thermal_coth(temps_.beta_Omega(), p_.Omega) *
              (a * a + W2 * b * b + wt * wt * (c * c + W2 * d * d));

    // The slow resonance makes |Phi|^2 oscillate as cos(nu t) across the whole
    // peak window once t >> 1/w_theta. That diagonal piece, weighted by the
    // bath spectrum at the peak, is removed from the integrand and added back
    // from its closed-form line integral pi e^{-kappa t}/kappa.
    const int ib = slow_term(B_, wt), id = slow_term(D_, wt);
    const double L = 0.5 * wt - std::abs(nu_peak_);
    const bool subtract = ib >= 0 && id >= 0 && kappa_ > 0.0 && t * L >= 1e4;
    double K = 0.0, Wp = 0.0, decay = 0.0;
    if (subtract) {
        K = std::norm(B_.terms[ib].residue) + wt * wt * std::norm(D_.terms[id].residue);
        const double omega_p = wt + nu_peak_;
        Wp = bath_weight(p_, temps_, omega_p);
        Wp *= 6.0 * phys::hbar * p_.Omega * wt * p_.g * p_.g * inv_two_pi;
        decay = std::exp(-kappa_ * t);
    }
    auto oscillating = [&](double nu) {
        const double x = nu - nu_peak_;
        return -2.0 * decay * Wp * K * std::cos(x * t) / (kappa_ * kappa_ + x * x);
    };

    std::vector<QuadSegment> segs;
    segs.push_back(QuadSegment{[&](double w) { return bath_integrand(w, 0.0, t); }, 0.0, 0.5 * wt, {}, 0.0});
    const double width = std::max(kappa_, std::min(1.0 / t, 0.25 * wt));
    auto splits = peak_splits(nu_peak_, kappa_, -0.5 * wt, 0.5 * wt);
    if (width > kappa_) {
        auto extra = peak_splits(nu_peak_, width, -0.5 * wt, 0.5 * wt);
        splits.insert(splits.end(), extra.begin(), extra.end());
        std::sort(splits.begin(), splits.end());
        splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
    }
    segs.push_back(QuadSegment{[&](double nu) {
                                   const double v = bath_integrand(wt, nu, t);
                                   return subtract ? v - oscillating(nu) : v;
                               },
                               -0.5 * wt, 0.5 * wt, splits, 0.0});
    auto hs = high_splits(p_, 1.5 * wt);
    if (1.0 / t > 1.5 * wt) hs.push_back(1.0 / t);
    std::sort(hs.begin(), hs.end());
    const double hi = 1.5 * wt;
    const bool split_high = t * hi >= split_high_periods;
    const double pref = 6.0 * phys::hbar * p_.Omega * wt * p_.g * p_.g * inv_two_pi;
    auto high = [&](double w) {
        if (!split_high) return bath_integrand(w, 0.0, t);
        cplx pb, qb, pd, qd;
        window_split(B_, w, t, pb, qb);
        window_split(D_, w, t, pd, qd);
        return pref * bath_weight(p_, temps_, w) *
               (std::norm(pb) + std::norm(qb) + wt * wt * (std::norm(pd) + std::norm(qd)));
    };
    segs.push_back(QuadSegment{high, hi, INFINITY, hs, p_.em_cutoff});

    out.baths = quad_segments(segs, budget_of(quad_));
    if (split_high) {
        // 2 Re[e^{i hi t} int_0^inf h(hi + x) e^{ixt} dx], h = w conj(P) Q summed over B and D
        auto h = [&](double x) {
            const double w = hi + x;
            cplx pb, qb, pd, qd;
            window_split(B_, w, t, pb, qb);
            window_split(D_, w, t, pd, qd);
            return pref * bath_weight(p_, temps_, w) * (std::conj(pb) * qb + wt * wt * std::conj(pd) * qd);
        };
        thread_local boost::math::quadrature::ooura_fourier_cos<double> fcos(quad_.rel_tol);
        thread_local boost::math::quadrature::ooura_fourier_sin<double> fsin(quad_.rel_tol);
        const auto cr = fcos.integrate([&](double x) { return h(x).real(); }, t);
        const auto ci = fcos.integrate([&](double x) { return h(x).imag(); }, t);
        const auto sr = fsin.integrate([&](double x) { return h(x).real(); }, t);
        const auto si = fsin.integrate([&](double x) { return h(x).imag(); }, t);
        const cplx J(cr.first - si.first, ci.first + sr.first);
        const double osc = 2.0 * (std::polar(1.0, hi * t) * J).real();
        const double err = 2.0 * (std::abs(cr.first * cr.second) + std::abs(ci.first * ci.second) +
                                  std::abs(sr.first * sr.second) + std::abs(si.first * si.second));
        out.baths += osc;
        if (!std::isfinite(osc) || err > std::max(quad_.rel_tol * std::abs(out.baths), quad_.abs_tol))
            throw NumericalError("oscillatory high-frequency tail did not converge", out.baths, err);
    }
    if (subtract) out.baths += -2.0 * decay * Wp * K * phys::pi * decay / kappa_;
    return out;
}

double internal_energy(const ModelParams& p, const TemperatureSet& temps, double t, const QuadratureSpec& quad) {
    return EnergyModel(p, temps, quad)(t);
}

int worker_threads() {
    if (const char* env = std::getenv("LEVITHERM_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n >= 1) return static_cast<int>(std::min<long>(n, 256));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

EnergyCurve internal_energy_curve(const ModelParams& p, const TemperatureSet& temps, const std::vector<double>& t_grid,
                                  const QuadratureSpec& quad) {
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] >= 0.0)) throw DomainError("internal_energy_curve: times must be non-negative");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw DomainError("internal_energy_curve: t_grid must be increasing");
    }
    const EnergyModel model(p, temps, quad);
    EnergyCurve c;
    c.t = t_grid;
    c.params = p;
    c.temps = temps;
    c.quad = quad;
    c.u0 = model.u0();
    try {
        c.u_inf = u_infinity(p, temps.beta_EM(), temps.beta_gamma(), quad);
    } catch (const NumericalError& err) {
        c.u_inf = std::numeric_limits<double>::quiet_NaN();
        c.u_inf_error = err.what();
    }
    const std::size_t n = t_grid.size();
    c.u.assign(n, std::numeric_limits<double>::quiet_NaN());
    c.du.assign(n, std::numeric_limits<double>::quiet_NaN());
    c.u_eff_temp.assign(n, std::numeric_limits<double>::quiet_NaN());
    c.errors.assign(n, std::string());
    std::vector<char> ok(n, 0);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                const EnergyParts e = model.parts(t_grid[i]);
                c.u[i] = e.total();
                c.du[i] = e.increment();
                c.u_eff_temp[i] = effective_temperature(c.u[i]);
                ok[i] = 1;
            } catch (const std::exception& e) {
                c.errors[i] = e.what();
            }
        }
    };
    const int nt = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(worker_threads()), std::max<std::size_t>(n, 1)));
    std::vector<std::thread> pool;
    for (int k = 1; k < nt; ++k) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    c.ok.assign(ok.begin(), ok.end());
    return c;
}

double initial_energy(const ModelParams& p, double beta_theta) {
    return 1.5 * phys::hbar * p.omega_theta * thermal_coth(beta_theta, p.omega_theta);
}

double short_time_increment(const ModelParams& p, const TemperatureSet& temps, double t) {
    if (!(t >= 0.0)) throw DomainError("short_time_energy: t must be non-negative");
    const double uO = 1.5 * phys::hbar * p.Omega * thermal_coth(temps.beta_Omega(), p.Omega);
    return p.omega_theta * p.g * p.g / p.Omega * uO * t * t * (1.0 - p.Gamma() * t / 2.0);
}

double short_time_energy(const ModelParams& p, const TemperatureSet& temps, double t) {
    return initial_energy(p, temps.beta_theta()) + short_time_increment(p, temps, t);
}

double t_max(const ModelParams& p) { return (4.0 / 3.0) / p.Gamma(); }

double u_infinity(const ModelParams& p, double beta_EM, double beta_gamma, const QuadratureSpec& quad) {
    return stationary_integral(p, StationaryIntegrand{p, beta_EM, beta_gamma, false}, quad);
}

double specific_heat(const ModelParams& p, double beta_EM, const QuadratureSpec& quad) {
    const double du = stationary_integral(p, StationaryIntegrand{p, beta_EM, beta_EM, true}, quad);
    return -phys::kB * beta_EM * beta_EM * du;
}

double einstein_specific_heat(double theta_E, double beta) {
    if (!(theta_E > 0.0)) throw DomainError("einstein_specific_heat: theta_E must be positive");
    if (!(beta > 0.0)) throw DomainError("einstein_specific_heat: beta must be positive");
    const double x = phys::kB * theta_E * beta;
    if (x > 1400.0) return 0.0;
    if (x < 1e-8) return 3.0 * phys::kB;
    const double s = std::sinh(0.5 * x);
    return 3.0 * phys::kB * (0.5 * x / s) * (0.5 * x / s);
}

double effective_temperature(double u) {
    if (!(u > 0.0)) throw DomainError("effective_temperature: u must be positive");
    return u / (3.0 * phys::kB);
}

std::vector<double> default_time_grid(const ModelParams& p, int points) {
    if (points < 2) throw DomainError("default_time_grid: need at least 2 points");
    const double lo = 0.1 * t_max(p), hi = 40.0 / kappa_slow(p);
    if (!(hi > lo)) throw DomainError("default_time_grid: empty window");
    std::vector<double> t;
    t.reserve(points + 1);
    t.push_back(0.0);
    const double r = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) t.push_back(lo * std::exp(r * i));
    t.back() = hi;
    return t;
}

}  // namespace levitherm
