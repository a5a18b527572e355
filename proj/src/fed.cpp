#include "levitherm/fed.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>

namespace levitherm {

using phys::pi;

void FedRun::validate() const {
    material.validate();
    if (!(T0 > 0.0) || !(T_EM > 0.0)) throw DomainError("FED temperatures must be positive");
    if (t_grid.empty()) throw DomainError("FED time grid is empty");
    if (t_grid.front() < 0.0) throw DomainError("FED time grid must start at t >= 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("FED time grid must be strictly increasing");
    if (!(ode_rel_tol > 0.0 && ode_rel_tol < 1e-1)) throw DomainError("FED ode_rel_tol out of range");
    quad.validate();
}

double fed_upper_frequency(double T_max) {
    // n < 1e-18  <=>  hbar w / kB T > ln(1 + 1e18)
    const double x = std::min(std::log1p(1e18), 60.0);
    return x * phys::kB * T_max / phys::hbar;
}

namespace {

double prefactor() { return phys::hbar / (pi * pi * phys::eps0 * phys::c * phys::c * phys::c); }

double chi_of(const MaterialSpec& mat, const Geometry& geo, double w) {
    return absorption_chi(dressed_polarizability(cm_polarizability(mat, geo, w), w), w);
}

double lower_frequency(double T_min) { return 1e-5 * phys::kB * T_min / phys::hbar; }

}  // namespace

double radiated_power(const MaterialSpec& mat, const Geometry& geo, double T, double T_EM, const QuadratureSpec& quad) {
    if (!(T > 0.0) || !(T_EM > 0.0)) throw DomainError("radiated_power: temperatures must be positive");
    if (T == T_EM) return 0.0;
    const double wmax = fed_upper_frequency(std::max(T, T_EM));
    const double wmin = lower_frequency(std::min(T, T_EM));
    const double k = prefactor();
    // integrate in ln w; the integrand spans several decades
    auto f = [&](double x) {
        const double w = std::exp(x);
        const double dn = bose_occupation(T, w) - bose_occupation(T_EM, w);
        return k * chi_of(mat, geo, w) * w * w * w * w * dn * w;
    };
    QuadratureSpec q = quad;
    q.split_points.clear();
    const double lo = std::log(wmin), hi = std::log(wmax);
    for (int i = 1; i < 16; ++i) q.split_points.push_back(lo + (hi - lo) * i / 16.0);
    return quad_adaptive(f, lo, hi, q);
}

FedPowerTable::FedPowerTable(const MaterialSpec& mat, const Geometry& geo, double T_lo, double T_hi, int panels_per_decade) {
    mat.validate();
    const double wmin = lower_frequency(T_lo), wmax = fed_upper_frequency(T_hi);
    const double lo = std::log(wmin), hi = std::log(wmax);
    const int panels = std::max(8, static_cast<int>(std::ceil((hi - lo) / std::log(10.0) * panels_per_decade)));
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    const auto& xs = GK::abscissa();
    const auto& ws = GK::weights();
    const double k = prefactor();
    for (int p = 0; p < panels; ++p) {
        const double a = lo + (hi - lo) * p / panels, b = lo + (hi - lo) * (p + 1) / panels;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (int sgn : {-1, 1}) {
                if (i == 0 && sgn < 0) continue;
                const double x = mid + sgn * half * xs[i];
                const double w = std::exp(x);
                omega_.push_back(w);
                weight_chi_.push_back(half * ws[i] * k * chi_of(mat, geo, w) * std::pow(w, 5));
            }
        }
    }
    heat_capacity_ = mat.rho * geo.volume() * mat.c_bulk;
}

double FedPowerTable::power(double T, double T_EM) const { return power_offset(T - T_EM, T_EM); }

double FedPowerTable::power_offset(double dT, double T_EM) const {
    if (dT == 0.0) return 0.0;
    const double T = T_EM + dT;
    if (!(T > 0.0)) throw DomainError("FED: temperature must stay positive");
    const double wmax = fed_upper_frequency(std::max(T, T_EM));
    double acc = 0.0;
    for (std::size_t i = 0; i < omega_.size(); ++i) {
        const double w = omega_[i];
        if (w > wmax) continue;
        const double a = phys::hbar * w / phys::kB;
        const double x = a / T, xe = a / T_EM, d = a * dT / (T * T_EM);
        double dn;
        if (std::abs(d) < 1.0 && x < 700.0 && xe < 700.0)
            // n(x) - n(xe) = expm1(xe - x) / ((1 - e^{-x}) (e^{xe} - 1))
            dn = std::expm1(d) / (-std::expm1(-x) * std::expm1(xe));
        else
            dn = bose_occupation(T, w) - bose_occupation(T_EM, w);
        acc += weight_chi_[i] * dn;
    }
    return acc;
}

FedSeries fed_thermalize(const FedRun& run) {
    run.validate();
    FedSeries out;
    if (run.T0 == run.T_EM) {
        out.t = run.t_grid;
        out.T.assign(run.t_grid.size(), run.T0);
        return out;
    }
    const double T_lo = std::min(run.T0, run.T_EM), T_hi = std::max(run.T0, run.T_EM);
    const FedPowerTable table(run.material, run.geometry, T_lo, T_hi);
    const double C = table.heat_capacity();
    const double T_EM = run.T_EM;

    using state = std::array<double, 1>;
    namespace ode = boost::numeric::odeint;
    // the state is dT = T - T_EM so the tolerance follows the approach to equilibrium
    const double dT0 = run.T0 - T_EM;
    auto rhs = [&](const state& y, state& dy, double) { dy[0] = -table.power_offset(y[0], T_EM) / C; };
    auto stepper = ode::make_controlled(run.ode_rel_tol * 1e-9 * std::abs(dT0), run.ode_rel_tol,
                                        ode::runge_kutta_dopri5<state>());

    state y{dT0};
    double t = 0.0;
    // initial step from the initial cooling rate
    state dy0;
    rhs(y, dy0, 0.0);
    double dt = std::max(1e-12, 1e-3 * std::abs(run.T0 - T_EM) / std::max(std::abs(dy0[0]), 1e-300));
    for (double target : run.t_grid) {
        while (t < target) {
            double h = std::min(dt, target - t);
            if (h < 1e-14 * std::max(1.0, std::abs(t))) {
                if (target - t <= 1e-14 * std::max(1.0, std::abs(t))) {
                    t = target;
                    break;
                }
                throw FedFailure("FED integration: step size underflow", out);
            }
            const double h_try = h;
            const auto res = stepper.try_step(rhs, y, t, h);
            if (res == ode::success) {
                // try_step proposes the next step in h; keep it unless we clipped to the grid
                dt = (h_try < dt) ? std::max(dt, h) : h;
            } else {
                dt = h;
            }
        }
        out.t.push_back(target);
        out.T.push_back(T_EM + y[0]);
    }
    return out;
}

}  // namespace levitherm
