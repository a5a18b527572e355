#include "levitherm/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace levitherm {

int Poly::degree() const {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
        if (c[i] != 0.0) return i;
    return -1;
}

cplx Poly::operator()(cplx s) const {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
    return acc;
}

double Poly::operator()(double s) const {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
    return acc;
}

Poly Poly::derivative() const {
    Poly d;
    for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(static_cast<double>(i) * c[i]);
    if (d.c.empty()) d.c.push_back(0.0);
    return d;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

Poly operator*(double k, const Poly& a) {
    Poly r = a;
    for (double& x : r.c) x *= k;
    return r;
}

namespace {

// Newton on p with a step acceptance test: keep the best residual seen.
cplx polish(const Poly& p, const Poly& dp, cplx z) {
    double best = std::abs(p(z));
    for (int it = 0; it < 60 && best > 0.0; ++it) {
        const cplx d = dp(z);
        if (d == 0.0) break;
        const cplx zn = z - p(z) / d;
        const double r = std::abs(p(zn));
        if (!(r < best)) break;
        z = zn;
        best = r;
    }
    return z;
}

}  // namespace

std::vector<cplx> roots(const Poly& p) {
    const int n = p.degree();
    if (n < 0) throw DomainError("empty polynomial");
    if (n > 6) throw DomainError("roots: degree above 6 is not supported");
    std::vector<cplx> out;
    if (n == 0) return out;

    // zero roots split off exactly
    int nz = 0;
    while (p.c[nz] == 0.0) ++nz;
    out.assign(nz, cplx(0.0));
    const int m = n - nz;
    if (m == 0) return out;

    // scale s = sigma x so that the monic polynomial has O(1) coefficients
    const double lead = p.c[n];
    const double sigma = std::pow(std::abs(p.c[nz] / lead), 1.0 / m);
    std::vector<double> q(m + 1);
    for (int k = 0; k <= m; ++k) q[k] = p.c[nz + k] / lead * std::pow(sigma, k - m);

    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i) comp(i, m - 1) = -q[i];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    if (es.info() != Eigen::Success) throw NumericalError("roots: eigenvalue iteration failed");

    const Poly dp = p.derivative();
    for (int i = 0; i < m; ++i) out.push_back(polish(p, dp, sigma * es.eigenvalues()[i]));

    // pair conjugates exactly so that real kernels stay real
    std::vector<cplx> paired;
    std::vector<bool> used(out.size(), false);
    const double tiny = 1e-12;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        const cplx z = out[i];
        if (std::abs(z.imag()) <= tiny * std::abs(z)) {
            paired.emplace_back(z.real(), 0.0);
            continue;
        }
        std::size_t best = out.size();
        double bd = 0.0;
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(out[j] - std::conj(z));
            if (best == out.size() || d < bd) { best = j; bd = d; }
        }
        if (best != out.size() && bd <= 1e-6 * std::abs(z)) {
            used[best] = true;
            const cplx avg(0.5 * (z.real() + out[best].real()), 0.5 * (std::abs(z.imag()) + std::abs(out[best].imag())));
            paired.push_back(avg);
            paired.push_back(std::conj(avg));
        } else {
            paired.push_back(z);
        }
    }
    return paired;
}

}  // namespace levitherm
