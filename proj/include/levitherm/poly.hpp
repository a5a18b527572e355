// poly.hpp - real polynomials in ascending-power form and their roots
#pragma once

#include <vector>

#include "levitherm/core.hpp"

namespace levitherm {

// p(s) = c[0] + c[1] s + ... + c[n] s^n
struct Poly {
    std::vector<double> c;

    int degree() const;
    cplx operator()(cplx s) const;
    double operator()(double s) const;
    Poly derivative() const;
};

Poly operator*(const Poly& a, const Poly& b);
Poly operator+(const Poly& a, const Poly& b);
Poly operator*(double k, const Poly& a);

// All complex roots with multiplicity (degree <= 6). Companion-matrix
// eigenvalues of the scaled polynomial, then Newton polishing on the original.
std::vector<cplx> roots(const Poly& p);

}  // namespace levitherm
