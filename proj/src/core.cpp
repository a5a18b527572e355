#include "levitherm/core.hpp"

#include <cmath>

namespace levitherm {

double thermal_coth(double beta, double omega) {
    if (!(omega > 0.0)) throw DomainError("thermal_coth: omega must be positive");
    if (!(beta > 0.0)) throw DomainError("thermal_coth: beta must be positive");
    const double x = beta * phys::hbar * omega;
    if (x > 80.0) return 1.0 + 2.0 * std::exp(-x);
    return 1.0 + 2.0 / std::expm1(x);
}

double bose_occupation(double T, double omega) {
    if (!(T > 0.0)) throw DomainError("bose_occupation: temperature must be positive");
    if (!(omega > 0.0)) throw DomainError("bose_occupation: omega must be positive");
    const double x = phys::hbar * omega / (phys::kB * T);
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

double thermal_coth_dbeta(double beta, double omega) {
    if (!(omega > 0.0)) throw DomainError("thermal_coth_dbeta: omega must be positive");
    if (!(beta > 0.0)) throw DomainError("thermal_coth_dbeta: beta must be positive");
    const double a = phys::hbar * omega;
    const double x = beta * a;
    // 1/sinh^2(x/2) = 4 e^{-x}/(1 - e^{-x})^2
    if (x > 700.0) return 0.0;
    const double em = std::exp(-x);
    const double d = -std::expm1(-x);
    return -0.5 * a * 4.0 * em / (d * d);
}

}  // namespace levitherm
