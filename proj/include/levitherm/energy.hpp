// energy.hpp - internal energy of the internal oscillator: full evolution, limits, heat capacity
#pragma once

#include <string>
#include <vector>

#include "levitherm/exp_sum.hpp"
#include "levitherm/matching.hpp"
#include "levitherm/quadrature.hpp"

namespace levitherm {

QuadratureSpec default_energy_quad();

struct EnergyParts {
    double relaxation = 0.0;        // memory of the initial internal state
    double relaxation_shift = 0.0;  // relaxation - u0, free of cancellation
    double odf = 0.0;               // initial optical-oscillator fluctuations
    double baths = 0.0;             // EM field and internal bath fluctuations
    double total() const { return relaxation + odf + baths; }
    // u - u0, resolvable far below the rounding of u0
    double increment() const { return relaxation_shift + odf + baths; }
};

// Kernels for one parameter/temperature set, built once and reused for every t.
class EnergyModel {
public:
    EnergyModel(const ModelParams& p, const TemperatureSet& temps, const QuadratureSpec& quad = default_energy_quad());

    EnergyParts parts(double t) const;
    double operator()(double t) const { return parts(t).total(); }

    double u0() const;
    double kappa_slow() const { return kappa_; }
    const ExpSum& G_theta() const { return Gt_; }
    const ExpSum& G_Omega() const { return Go_; }
    const ModelParams& params() const { return p_; }

    // relaxation - u0 through the deviation of Gt from the free propagator
    double relaxation_shift(double t) const;

    // fluctuation integrand over w, written with w = base + nu
    double bath_integrand(double base, double nu, double t) const;

private:
    ModelParams p_;
    TemperatureSet temps_;
    QuadratureSpec quad_;
    ExpSum Gt_, dGt_, Go_, dGo_;
    ExpSum A_, B_, C_, D_;  // dGt*dGo, dGt*Go, Gt*dGo, Gt*Go
    ExpSum H_;              // Go*Gt; Gt - sin(w_theta t)/w_theta = c sin*H
    double kappa_ = 0.0, nu_peak_ = 0.0;
};

struct EnergyCurve {
    std::vector<double> t;
    std::vector<double> u;
    std::vector<double> du;  // u - u0 from EnergyParts::increment
    std::vector<double> u_eff_temp;
    std::vector<bool> ok;  // false where the point failed (u is NaN)
    std::vector<std::string> errors;
    ModelParams params;
    TemperatureSet temps;
    QuadratureSpec quad;
    double u0 = 0.0;
    double u_inf = 0.0;  // NaN when its quadrature failed
    std::string u_inf_error;
};

double internal_energy(const ModelParams& p, const TemperatureSet& temps, double t, const QuadratureSpec& quad = default_energy_quad());

// Points are independent and evaluated on up to LEVITHERM_THREADS threads.
EnergyCurve internal_energy_curve(const ModelParams& p, const TemperatureSet& temps, const std::vector<double>& t_grid,
                                  const QuadratureSpec& quad = default_energy_quad());

// (3 hbar w_theta/2) coth(beta_theta hbar w_theta/2)
double initial_energy(const ModelParams& p, double beta_theta);

// u0 + (w_theta g^2/Omega) u_Omega0 t^2 [1 - (4 gamma_I + Omega^2/omega_q) t/2]
double short_time_energy(const ModelParams& p, const TemperatureSet& temps, double t);
// the t^2 and t^3 terms alone; they sit far below the rounding of u0 for physical g
double short_time_increment(const ModelParams& p, const TemperatureSet& temps, double t);

// (4/3) / (4 gamma_I + Omega^2/omega_q)
double t_max(const ModelParams& p);

// Long-time limit from the stationary spectra.
double u_infinity(const ModelParams& p, double beta_EM, double beta_gamma, const QuadratureSpec& quad = default_energy_quad());

// -kB beta^2 du_inf/dbeta_EM with the derivative taken under the integral.
double specific_heat(const ModelParams& p, double beta_EM, const QuadratureSpec& quad = default_energy_quad());

// 3 kB x^2 e^x/(e^x - 1)^2, x = hbar w_theta beta, w_theta = kB theta_E/hbar
double einstein_specific_heat(double theta_E, double beta);

// u/(3 kB); an energy per mode, not an equilibrium temperature
double effective_temperature(double u);

// t = 0 followed by points log-spaced from t_max/10 to 40/kappa_slow
std::vector<double> default_time_grid(const ModelParams& p, int points);

// thread cap from LEVITHERM_THREADS, else hardware concurrency
int worker_threads();

}  // namespace levitherm
