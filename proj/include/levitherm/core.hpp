// core.hpp - constants, error types and thermal occupation factors
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace levitherm {

using cplx = std::complex<double>;

struct PhysConstants {
    double hbar;
    double c;
    double eps0;
    double kB;
};

// CODATA 2018
inline constexpr PhysConstants codata{1.054571817e-34, 299792458.0, 8.8541878128e-12, 1.380649e-23};

namespace phys {
inline constexpr double hbar = codata.hbar;
inline constexpr double c = codata.c;
inline constexpr double eps0 = codata.eps0;
inline constexpr double kB = codata.kB;
inline constexpr double pi = 3.14159265358979323846;
}  // namespace phys

// Bad argument or configuration; maps to CLI exit code 1.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Numerical failure; carries the best estimate available when it gave up.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double estimate = 0.0, double error_bound = 0.0)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

inline double beta_of(double T) {
    if (!(T > 0.0)) throw DomainError("temperature must be positive");
    return 1.0 / (phys::kB * T);
}

// coth(beta*hbar*omega/2) = 1 + 2/expm1(beta*hbar*omega)
double thermal_coth(double beta, double omega);

// 1/expm1(hbar*omega/(kB*T))
double bose_occupation(double T, double omega);

// d/dbeta coth(beta*hbar*omega/2) = -(hbar*omega/2)/sinh^2(beta*hbar*omega/2)
double thermal_coth_dbeta(double beta, double omega);

}  // namespace levitherm
