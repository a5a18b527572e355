#include "levitherm/exp_sum.hpp"

#include <algorithm>
#include <cmath>

namespace levitherm {

namespace {

// exp(offset t) * exp(i anchor t), phases of anchored poles computed separately
cplx term_exp(const ExpTerm& term, double t) {
    const double re = term.offset.real() * t;
    if (re < -745.0) return 0.0;
    const double mag = std::exp(re);
    const double ph = (term.anchor + term.offset.imag()) * t;
    return {mag * std::cos(ph), mag * std::sin(ph)};
}

// e^{w} - 1 without cancellation for small |w|
cplx cexpm1(cplx w) {
    const double x = w.real(), y = w.imag();
    if (x < -745.0) return -1.0;
    const double em = std::expm1(x);
    const double s = std::sin(0.5 * y);
    const double cm1 = -2.0 * s * s;
    return {em * std::cos(y) + cm1, (em + 1.0) * std::sin(y)};
}

// int_0^t e^{z u} du
cplx window0(cplx z, double t) {
    const cplx w = z * t;
    if (std::abs(w) < 1e-8) return t * (1.0 + 0.5 * w);
    return cexpm1(w) / z;
}

// int_0^t u e^{z u} du = t^2 sum_k w^k / (k! (k+2)), w = z t
cplx window1(cplx z, double t) {
    const cplx w = z * t;
    if (std::abs(w) < 0.5) {
        cplx sum = 0.0, pw = 1.0;
        double fact = 1.0;
        for (int k = 0; k < 30; ++k) {
            if (k > 0) { pw *= w; fact *= k; }
            sum += pw / (fact * (k + 2));
        }
        return t * t * sum;
    }
    const cplx e = std::exp(w);
    return (e * (w - 1.0) + 1.0) / (z * z);
}

cplx pole_diff(const ExpTerm& a, const ExpTerm& b) {
    return (a.offset - b.offset) + cplx(0.0, a.anchor - b.anchor);
}

bool same_pole(const ExpTerm& a, const ExpTerm& b) { return a.offset == b.offset && a.anchor == b.anchor; }

}  // namespace

ExpSum ExpSum::from_poles(const std::vector<cplx>& residues, const std::vector<cplx>& poles) {
    ExpSum f;
    for (std::size_t i = 0; i < poles.size(); ++i) f.add(residues[i], poles[i]);
    return f;
}

void ExpSum::add(cplx residue, cplx pole, int power) { add(ExpTerm{residue, pole, 0.0, power}); }

void ExpSum::add(const ExpTerm& term) {
    for (auto& t : terms) {
        if (t.power == term.power && same_pole(t, term)) {
            t.residue += term.residue;
            return;
        }
    }
    terms.push_back(term);
}

double ExpSum::max_real_pole() const {
    double m = -INFINITY;
    for (const auto& t : terms) m = std::max(m, t.offset.real());
    return m;
}

double ExpSum::slowest_rate() const { return std::abs(max_real_pole()); }

ExpSum ExpSum::derivative() const {
    ExpSum d;
    for (const auto& t : terms) {
        const cplx s = t.pole();
        d.add(ExpTerm{t.residue * s, t.offset, t.anchor, t.power});
        if (t.power == 1) d.add(ExpTerm{t.residue, t.offset, t.anchor, 0});
    }
    return d;
}

ExpSum ExpSum::scaled(cplx k) const {
    ExpSum r = *this;
    for (auto& t : r.terms) t.residue *= k;
    return r;
}

cplx exp_sum_eval_complex(const ExpSum& f, double t, int deriv_order) {
    if (t < 0.0) return 0.0;
    if (deriv_order < 0 || deriv_order > 2) throw DomainError("exp_sum_eval: derivative order must be 0, 1 or 2");
    cplx acc = 0.0;
    for (const auto& term : f.terms) {
        const cplx e = term_exp(term, t);
        if (e == 0.0) continue;
        const cplx s = term.pole();
        cplx poly;
        if (term.power == 0) {
            poly = deriv_order == 0 ? cplx(1.0) : deriv_order == 1 ? s : s * s;
        } else {
            // d^k/dt^k (t e^{st}) = (s^k t + k s^{k-1}) e^{st}
            poly = deriv_order == 0 ? cplx(t) : deriv_order == 1 ? s * t + 1.0 : s * s * t + 2.0 * s;
        }
        acc += term.residue * poly * e;
    }
    return acc;
}

double exp_sum_eval(const ExpSum& f, double t, int deriv_order) {
    return exp_sum_eval_complex(f, t, deriv_order).real();
}

ExpSum convolve(const ExpSum& f, const ExpSum& g) {
    double scale = 0.0;
    for (const auto& t : f.terms) scale = std::max(scale, std::abs(t.pole()));
    for (const auto& t : g.terms) scale = std::max(scale, std::abs(t.pole()));
    const double tol = 1e-9 * scale;

    ExpSum r;
    for (const auto& a : f.terms) {
        for (const auto& b : g.terms) {
            const cplx ab = a.residue * b.residue;
            const cplx d = pole_diff(a, b);  // p - q
            const ExpTerm P0{1.0, a.offset, a.anchor, 0}, P1{1.0, a.offset, a.anchor, 1};
            const ExpTerm Q0{1.0, b.offset, b.anchor, 0}, Q1{1.0, b.offset, b.anchor, 1};
            auto put = [&](const ExpTerm& base, cplx k) {
                ExpTerm t = base;
                t.residue = k;
                r.add(t);
            };
            if (std::abs(d) <= tol) {
                if (a.power != 0 || b.power != 0) throw NumericalError("confluent poles");
                // e^{pt} * e^{pt} = t e^{pt}; nearly equal poles merged at their midpoint
                ExpTerm mid{ab, 0.5 * (a.offset + b.offset), 0.5 * (a.anchor + b.anchor), 1};
                if (same_pole(a, b)) mid = ExpTerm{ab, a.offset, a.anchor, 1};
                r.add(mid);
                continue;
            }
            if (a.power == 0 && b.power == 0) {
                put(P0, ab / d);
                put(Q0, -ab / d);
            } else if (a.power == 1 && b.power == 0) {
                // (t e^{pt}) * e^{qt} = t e^{pt}/d - (e^{pt} - e^{qt})/d^2
                put(P1, ab / d);
                put(P0, -ab / (d * d));
                put(Q0, ab / (d * d));
            } else if (a.power == 0 && b.power == 1) {
                // symmetric: e^{pt} * (t e^{qt}) with d' = q - p = -d
                const cplx e = -d;
                put(Q1, ab / e);
                put(Q0, -ab / (e * e));
                put(P0, ab / (e * e));
            } else {
                // (t e^{pt}) * (t e^{qt}) = (t e^{pt} + t e^{qt})/d^2 - 2(e^{pt} - e^{qt})/d^3
                const cplx d2 = d * d, d3 = d2 * d;
                put(P1, ab / d2);
                put(Q1, ab / d2);
                put(P0, -2.0 * ab / d3);
                put(Q0, 2.0 * ab / d3);
            }
        }
    }
    return r;
}

cplx windowed_fourier(const ExpSum& f, double omega, double t) { return windowed_fourier(f, omega, 0.0, t); }

cplx windowed_fourier(const ExpSum& f, double omega_base, double nu, double t) {
    if (t <= 0.0) return 0.0;
    cplx acc = 0.0;
    for (const auto& term : f.terms) {
        const cplx z = term.offset + cplx(0.0, (term.anchor + omega_base) + nu);
        acc += term.residue * (term.power == 0 ? window0(z, t) : window1(z, t));
    }
    return acc;
}

cplx laplace_value(const ExpSum& f, cplx s) {
    cplx acc = 0.0;
    for (const auto& term : f.terms) {
        const cplx d = s - term.pole();
        acc += term.power == 0 ? term.residue / d : term.residue / (d * d);
    }
    return acc;
}

cplx laplace_at_frequency(const ExpSum& f, double omega_base, double nu) {
    cplx acc = 0.0;
    for (const auto& term : f.terms) {
        // s - p with s = -i omega, written as -(p + i omega)
        const cplx z = term.offset + cplx(0.0, (term.anchor + omega_base) + nu);
        acc += term.power == 0 ? -term.residue / z : term.residue / (z * z);
    }
    return acc;
}

}  // namespace levitherm
