// quadrature.hpp - globally adaptive Gauss-Kronrod integration over mapped segments
#pragma once

#include <functional>
#include <vector>

#include "levitherm/core.hpp"

namespace levitherm {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    int max_subdivisions = 4000;
    std::vector<double> split_points;  // sorted ascending
    double map_scale = 0.0;            // Lambda of the semi-infinite map; 0 picks the largest split point

    void validate() const;
};

struct QuadratureInfo {
    double error = 0.0;
    int subdivisions = 0;
    int evaluations = 0;
};

using Integrand = std::function<double(double)>;

// One piece of a composite integral. Finite pieces are integrated directly;
// semi-infinite pieces use w = a - map_scale * ln(1 - x), x in [0, 1).
struct QuadSegment {
    Integrand f;
    double a = 0.0;
    double b = 0.0;  // +infinity allowed
    std::vector<double> split_points;
    double map_scale = 0.0;
};

// Integral of f over (a, b), b may be +infinity. Error target is
// max(rel_tol |I|, abs_tol); on failure throws NumericalError with the best estimate.
double quad_adaptive(const Integrand& f, double a, double b, const QuadratureSpec& spec, QuadratureInfo* info = nullptr);

// Sum of segment integrals sharing one global error budget.
double quad_segments(const std::vector<QuadSegment>& segments, const QuadratureSpec& spec, QuadratureInfo* info = nullptr);

}  // namespace levitherm
