// support.hpp - independent numerical oracles shared by the tests
#pragma once

#include <boost/numeric/odeint.hpp>
#include <functional>
#include <vector>

namespace oracle {

using State = std::vector<double>;

// Integrates x' = A x from x0 and samples component `out` at each time in `ts`.
inline std::vector<double> linear_ode(const std::vector<std::vector<double>>& A, State x0, const std::vector<double>& ts,
                                      std::size_t out, double rel = 1e-12, double abs = 1e-14) {
    namespace ode = boost::numeric::odeint;
    auto rhs = [&](const State& x, State& dx, double) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) s += A[i][j] * x[j];
            dx[i] = s;
        }
    };
    std::vector<double> res;
    auto obs = [&](const State& x, double) { res.push_back(x[out]); };
    const double dt0 = ts.size() > 1 ? (ts[1] - ts[0]) * 1e-3 : 1e-3;
    ode::integrate_times(ode::make_dense_output(abs, rel, ode::runge_kutta_dopri5<State>()), rhs, x0, ts.begin(),
                         ts.end(), dt0, obs);
    return res;
}

// Composite Simpson rule on n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

inline double trapezoid(const std::vector<double>& y, double h) {
    double s = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
    return s * h;
}

}  // namespace oracle
