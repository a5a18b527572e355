// fed.hpp - quasi-equilibrium radiative cooling of a sphere (fluctuational electrodynamics)
#pragma once

#include <vector>

#include "levitherm/materials.hpp"
#include "levitherm/quadrature.hpp"

namespace levitherm {

struct FedRun {
    MaterialSpec material;
    Geometry geometry{50e-9};
    double T0 = 1000.0;
    double T_EM = 300.0;
    std::vector<double> t_grid;  // s, strictly increasing, t_grid[0] >= 0
    QuadratureSpec quad{};
    double ode_rel_tol = 1e-6;

    void validate() const;
};

struct FedSeries {
    std::vector<double> t;
    std::vector<double> T;
};

class FedFailure : public NumericalError {
public:
    FedFailure(const std::string& what, FedSeries partial) : NumericalError(what), partial_(std::move(partial)) {}
    const FedSeries& partial() const noexcept { return partial_; }

private:
    FedSeries partial_;
};

// Net radiated power, W; positive when the particle is hotter than the field.
double radiated_power(const MaterialSpec& mat, const Geometry& geo, double T, double T_EM, const QuadratureSpec& quad = {});

// chi(w) tabulated once on Gauss-Kronrod nodes of log-spaced panels covering
// the thermal band of every temperature up to T_hi; P(T) then costs one weighted sum.
class FedPowerTable {
public:
    FedPowerTable(const MaterialSpec& mat, const Geometry& geo, double T_lo, double T_hi, int panels_per_decade = 24);
    double power(double T, double T_EM) const;
    // same, from the offset dT = T - T_EM without cancellation near equilibrium
    double power_offset(double dT, double T_EM) const;
    double heat_capacity() const { return heat_capacity_; }  // rho V C, J/K

private:
    std::vector<double> omega_, weight_chi_;  // weight_chi = quadrature weight * chi * w^4 hbar/(pi^2 eps0 c^3)
    double heat_capacity_;
};

// Integrates rho V C dT/dt = -P(T) with an adaptive Dormand-Prince 5(4) pair.
FedSeries fed_thermalize(const FedRun& run);

// Upper frequency where n(T, w) < 1e-18, capped at 60 kB T / hbar.
double fed_upper_frequency(double T_max);

}  // namespace levitherm
