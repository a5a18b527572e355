#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "levitherm/poly.hpp"

using namespace levitherm;

namespace {

Poly from_roots(const std::vector<cplx>& r) {
    std::vector<cplx> c{1.0};
    for (cplx z : r) {
        std::vector<cplx> n(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            n[i + 1] += c[i];
            n[i] -= z * c[i];
        }
        c = n;
    }
    Poly p;
    for (cplx z : c) p.c.push_back(z.real());
    return p;
}

double nearest(const std::vector<cplx>& found, cplx z) {
    double d = 1e300;
    for (cplx f : found) d = std::min(d, std::abs(f - z));
    return d;
}

}  // namespace

TEST(Poly, EvaluateAndDerivative) {
    const Poly p{{1.0, -2.0, 3.0}};
    EXPECT_DOUBLE_EQ(p(2.0), 9.0);
    EXPECT_EQ(p.derivative().c, (std::vector<double>{-2.0, 6.0}));
    EXPECT_EQ((p * Poly{{0.0, 1.0}}).degree(), 3);
}

TEST(Poly, QuadraticRoots) {
    const auto r = roots(Poly{{2.0, -3.0, 1.0}});
    ASSERT_EQ(r.size(), 2u);
    EXPECT_LT(nearest(r, 1.0), 1e-14);
    EXPECT_LT(nearest(r, 2.0), 1e-14);
}

TEST(Poly, ZeroRootsSplitOff) {
    const auto r = roots(Poly{{0.0, 0.0, -1.0, 1.0}});
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(std::count(r.begin(), r.end(), cplx(0.0)), 2);
    EXPECT_LT(nearest(r, 1.0), 1e-14);
}

TEST(Poly, WidelySeparatedScales) {
    const std::vector<cplx> truth{cplx(-1e16, 0.0), cplx(-3e15, 0.0), cplx(-0.5, -1.7e13), cplx(-0.5, 1.7e13)};
    const auto r = roots(from_roots(truth));
    for (cplx z : truth) EXPECT_LT(nearest(r, z), 1e-8 * std::abs(z));
}

TEST(Poly, RandomRootsRecovered) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<cplx> truth;
        const int pairs = 1 + trial % 3;
        for (int k = 0; k < pairs; ++k) {
            const cplx z(u(rng), u(rng));
            truth.push_back(z);
            truth.push_back(std::conj(z));
        }
        const auto r = roots(from_roots(truth));
        ASSERT_EQ(r.size(), truth.size());
        for (cplx z : truth) EXPECT_LT(nearest(r, z), 1e-7 * (1.0 + std::abs(z)));
    }
}

TEST(Poly, ConjugatePairsAreExact) {
    const auto r = roots(Poly{{5.0, 2.0, 1.0}});
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0], std::conj(r[1]));
}

TEST(Poly, Errors) {
    EXPECT_THROW(roots(Poly{{0.0, 0.0}}), DomainError);
    EXPECT_THROW(roots(Poly{{1, 1, 1, 1, 1, 1, 1, 1}}), DomainError);
}
