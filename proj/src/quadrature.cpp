#include "levitherm/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <queue>
#include <string>

namespace levitherm {

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw DomainError("quadrature rel_tol must lie in (0, 1e-2]");
    if (!(abs_tol >= 0.0)) throw DomainError("quadrature abs_tol must be non-negative");
    if (max_subdivisions < 1) throw DomainError("quadrature max_subdivisions must be positive");
    if (!std::is_sorted(split_points.begin(), split_points.end()))
        throw DomainError("quadrature split points must be sorted ascending");
}

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 21>;

struct Piece {
    int seg;
    double lo, hi;  // in the segment's own variable
    double value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

struct Prepared {
    Integrand g;  // integrand in the integration variable
    std::vector<double> cuts;
};

Prepared prepare(const QuadSegment& s) {
    Prepared p;
    if (std::isinf(s.b)) {
        double lam = s.map_scale;
        if (!(lam > 0.0)) {
            lam = 1.0;
            for (double x : s.split_points) lam = std::max(lam, std::abs(x - s.a));
        }
        const double a = s.a;
        const Integrand f = s.f;
        p.g = [f, a, lam](double x) {
            const double om = x < 1.0 ? 1.0 - x : 0.0;
            if (om <= 0.0) return 0.0;
            const double w = a - lam * std::log(om);
            return f(w) * lam / om;
        };
        p.cuts.push_back(0.0);
        for (double w : s.split_points)
            if (w > a) p.cuts.push_back(-std::expm1(-(w - a) / lam));
        p.cuts.push_back(1.0);
    } else {
        p.g = s.f;
        p.cuts.push_back(s.a);
        for (double w : s.split_points)
            if (w > s.a && w < s.b) p.cuts.push_back(w);
        p.cuts.push_back(s.b);
    }
    std::sort(p.cuts.begin(), p.cuts.end());
    p.cuts.erase(std::unique(p.cuts.begin(), p.cuts.end()), p.cuts.end());
    return p;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

Piece rule(const Prepared& p, int seg, double lo, double hi, int& evals) {
    double err = 0.0;
    const double v = GK::integrate(p.g, lo, hi, 0, 0.0, &err);
    evals += 21;
    if (!std::isfinite(v)) throw NumericalError("quadrature: integrand is not finite", 0.0, INFINITY);
    // the single-level rule reports its error on the reference interval [-1, 1]
    return Piece{seg, lo, hi, v, std::abs(err) * 0.5 * (hi - lo)};
}

}  // namespace

double quad_segments(const std::vector<QuadSegment>& segments, const QuadratureSpec& spec, QuadratureInfo* info) {
    spec.validate();
    std::vector<Prepared> prep;
    prep.reserve(segments.size());
    for (const auto& s : segments) {
        if (!(s.b > s.a)) throw DomainError("quadrature: empty or reversed interval");
        prep.push_back(prepare(s));
    }

    int evals = 0;
    std::priority_queue<Piece> heap;
    for (int k = 0; k < static_cast<int>(prep.size()); ++k)
        for (std::size_t i = 0; i + 1 < prep[k].cuts.size(); ++i) heap.push(rule(prep[k], k, prep[k].cuts[i], prep[k].cuts[i + 1], evals));

    auto totals = [&heap](double& v, double& e) {
        v = 0.0;
        e = 0.0;
        auto copy = heap;
        while (!copy.empty()) {
            v += copy.top().value;
            e += copy.top().error;
            copy.pop();
        }
    };

    double value = 0.0, error = 0.0;
    totals(value, error);
    int subdivisions = static_cast<int>(heap.size());
    while (error > std::max(spec.rel_tol * std::abs(value), spec.abs_tol)) {
        if (subdivisions >= spec.max_subdivisions) {
            if (info) *info = QuadratureInfo{error, subdivisions, evals};
            throw NumericalError("quadrature did not converge: estimate " + sci(value) + " +/- " + sci(error), value, error);
        }
        const Piece worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            // interval cannot be split further; accept its estimate
            if (worst.error <= 1e-3 * std::abs(value) || worst.error == 0.0) break;
            if (info) *info = QuadratureInfo{error, subdivisions, evals};
            throw NumericalError("quadrature: interval exhausted floating-point resolution", value, error);
        }
        heap.pop();
        const Piece l = rule(prep[worst.seg], worst.seg, worst.lo, mid, evals);
        const Piece r = rule(prep[worst.seg], worst.seg, mid, worst.hi, evals);
        value += l.value + r.value - worst.value;
        error += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++subdivisions;
        // refresh running sums periodically against drift
        if (subdivisions % 256 == 0) totals(value, error);
    }
    totals(value, error);
    if (info) *info = QuadratureInfo{error, subdivisions, evals};
    return value;
}

double quad_adaptive(const Integrand& f, double a, double b, const QuadratureSpec& spec, QuadratureInfo* info) {
    QuadSegment s{f, a, b, spec.split_points, spec.map_scale};
    return quad_segments({s}, spec, info);
}

}  // namespace levitherm
