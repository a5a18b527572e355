#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "levitherm/fed.hpp"
#include "support.hpp"

using namespace levitherm;

namespace {

FedRun gold_run(double R_nm, std::vector<double> grid) {
    FedRun r;
    r.material = gold();
    r.geometry = Geometry::from_nm(R_nm);
    r.t_grid = std::move(grid);
    return r;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> t{0.0};
    for (int i = 0; i < n; ++i) t.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
    return t;
}

}  // namespace

TEST(Fed, PowerVanishesAtFieldTemperature) {
    EXPECT_EQ(radiated_power(gold(), Geometry::from_nm(50.0), 300.0, 300.0), 0.0);
    FedPowerTable t(gold(), Geometry::from_nm(50.0), 300.0, 1000.0);
    EXPECT_EQ(t.power(300.0, 300.0), 0.0);
}

TEST(Fed, PowerSignFollowsTemperatureDifference) {
    const Geometry g = Geometry::from_nm(50.0);
    EXPECT_GT(radiated_power(gold(), g, 1000.0, 300.0), 0.0);
    EXPECT_LT(radiated_power(gold(), g, 200.0, 300.0), 0.0);
}

TEST(Fed, PowerAgainstIndependentQuadrature) {
    const MaterialSpec m = gold();
    const Geometry geo = Geometry::from_nm(100.0);
    const double T = 1000.0, Te = 300.0;
    auto f = [&](double w) {
        if (w <= 0.0) return 0.0;
        const double chi = absorption_chi(dressed_polarizability(cm_polarizability(m, geo, w), w), w);
        return phys::hbar * chi * std::pow(w, 4) / (phys::pi * phys::pi * phys::eps0 * std::pow(phys::c, 3)) *
               (bose_occupation(T, w) - bose_occupation(Te, w));
    };
    const double wmax = fed_upper_frequency(T);
    const double ref = boost::math::quadrature::tanh_sinh<double>().integrate(f, 0.0, wmax, 1e-12);
    const double P = radiated_power(m, geo, T, Te);
    EXPECT_NEAR(P / ref, 1.0, 1e-6);
    FedPowerTable table(m, geo, Te, T);
    EXPECT_NEAR(table.power(T, Te) / ref, 1.0, 1e-6);
    // regression value of the first verified computation
    EXPECT_NEAR(P, 1.2918217461e-12, 1e-20);
}

TEST(Fed, PowerScalesWithVolume) {
    const double p10 = radiated_power(gold(), Geometry::from_nm(10.0), 1000.0, 300.0);
    for (double R : {20.0, 50.0, 100.0}) {
        const double pR = radiated_power(gold(), Geometry::from_nm(R), 1000.0, 300.0);
        EXPECT_NEAR(pR / p10 / std::pow(R / 10.0, 3), 1.0, 0.01);
    }
}

TEST(Fed, UpperFrequency) {
    EXPECT_NEAR(fed_upper_frequency(1000.0), std::log1p(1e18) * phys::kB * 1000.0 / phys::hbar, 1.0);
}

TEST(Fed, FixedPoint) {
    FedRun r = gold_run(50.0, {0.0, 1.0, 100.0, 1e4});
    r.T0 = r.T_EM = 300.0;
    for (double T : fed_thermalize(r).T) EXPECT_NEAR(T, 300.0, 300.0 * 1e-12);
}

TEST(Fed, MonotoneCooling) {
    const auto s = fed_thermalize(gold_run(50.0, log_grid(1e-2, 1e5, 80)));
    EXPECT_DOUBLE_EQ(s.T.front(), 1000.0);
    for (std::size_t i = 1; i < s.T.size(); ++i) {
        // strict until the curve reaches the field temperature to double precision
        if (s.T[i - 1] - 300.0 > 1e-9) EXPECT_LT(s.T[i], s.T[i - 1]);
        EXPECT_LE(s.T[i], s.T[i - 1] + 1e-9);
        EXPECT_GE(s.T[i], 300.0 - 1e-9);
    }
    EXPECT_LT(s.T.back() - 300.0, 1.0);
}

TEST(Fed, MonotoneHeating) {
    FedRun r = gold_run(50.0, log_grid(1e-2, 1e5, 40));
    r.T0 = 100.0;
    const auto s = fed_thermalize(r);
    for (std::size_t i = 1; i < s.T.size(); ++i) {
        if (300.0 - s.T[i - 1] > 1e-9) EXPECT_GT(s.T[i], s.T[i - 1]);
        EXPECT_GE(s.T[i], s.T[i - 1] - 1e-9);
        EXPECT_LE(s.T[i], 300.0 + 1e-9);
    }
}

TEST(Fed, EnergyBookkeeping) {
    // dense uniform grid so the solver's own P(T(t)) history can be integrated by Simpson
    const int n = 20000;
    std::vector<double> grid(n + 1);
    const double tend = 2000.0;
    for (int i = 0; i <= n; ++i) grid[i] = tend * i / n;
    FedRun r = gold_run(50.0, grid);
    r.ode_rel_tol = 1e-9;
    const auto s = fed_thermalize(r);
    FedPowerTable table(r.material, r.geometry, 300.0, 1000.0);
    std::vector<double> P(n + 1);
    for (int i = 0; i <= n; ++i) P[i] = table.power(s.T[i], 300.0);
    double integral = P[0] + P[n];
    for (int i = 1; i < n; ++i) integral += (i % 2 ? 4.0 : 2.0) * P[i];
    integral *= (tend / n) / 3.0;
    const double stored = table.heat_capacity() * (1000.0 - s.T.back());
    EXPECT_NEAR(integral / stored, 1.0, 1e-4);
}

TEST(Fed, RunValidation) {
    EXPECT_THROW(fed_thermalize(gold_run(50.0, {})), DomainError);
    EXPECT_THROW(fed_thermalize(gold_run(50.0, {1.0, 0.5})), DomainError);
    FedRun r = gold_run(50.0, {0.0, 1.0});
    r.T0 = -1.0;
    EXPECT_THROW(fed_thermalize(r), DomainError);
}
