#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fcpool/errors.hpp"
#include "fcpool/exp_poly.hpp"
#include "fcpool/kernels.hpp"
#include "fcpool/simulator.hpp"
#include "oracles.hpp"

namespace fcpool {
namespace {

using testing::exponential_u;
using testing::poisson_pmf;
using testing::simpson;

std::vector<RatePlan> plans(int m)
{
    std::vector<double> rates;
    for (int i = 1; i <= m; ++i) {
        rates.push_back(0.4 + 0.35 * i);
    }
    return {RatePlan::constant(1.2, m), RatePlan::proportional(0.7, m), RatePlan::general(rates)};
}

std::vector<ServiceLaw> laws()
{
    return {ServiceLaw::exponential(1.5), ServiceLaw::erlang(2, 3.0),
            ServiceLaw::hyperexponential({0.4, 0.6}, {0.8, 3.0}), ServiceLaw::deterministic(0.9)};
}

TEST(ArrivalCountMixture, Examples)
{
    auto const trivial = arrival_count_mixture(RatePlan::constant(1.0, 3), 0, 0);
    ASSERT_EQ(trivial.terms.size(), 1u);
    EXPECT_DOUBLE_EQ(trivial.evaluate(2.5), 1.0);

    auto const poisson = arrival_count_mixture(RatePlan::constant(1.0, 2), 2, 1);
    ASSERT_EQ(poisson.terms.size(), 1u);
    EXPECT_EQ(poisson.terms[0], (ExpPolyTerm{1.0, 1, 1.0}));
    EXPECT_NEAR(poisson.evaluate(0.7), 0.7 * std::exp(-0.7), 1e-15);

    auto cdf = arrival_count_mixture(RatePlan::proportional(1.0, 1), 1, 1).terms;
    ASSERT_EQ(cdf.size(), 2u);
    std::sort(cdf.begin(), cdf.end(), [](auto const& a, auto const& b) { return a.rate < b.rate; });
    EXPECT_EQ(cdf[0], (ExpPolyTerm{1.0, 0, 0.0}));
    EXPECT_EQ(cdf[1], (ExpPolyTerm{-1.0, 0, 1.0}));
}

TEST(ArrivalCountMixture, IndexErrors)
{
    auto const plan = RatePlan::constant(1.0, 3);
    EXPECT_THROW(arrival_count_mixture(plan, 4, 0), IndexError);
    EXPECT_THROW(arrival_count_mixture(plan, 2, 3), IndexError);
    EXPECT_THROW(arrival_count_mixture(plan, -1, 0), IndexError);
}

TEST(ArrivalCountMixture, ProbabilityBoundsAndOrigin)
{
    for (auto const& plan : plans(6)) {
        for (int n = 0; n <= 6; ++n) {
            double row_at_t = 0.0;
            for (int i = 0; i <= n; ++i) {
                auto const h = arrival_count_mixture(plan, n, i);
                EXPECT_NEAR(h.evaluate(0.0), i == 0 ? 1.0 : 0.0, 1e-10);
                for (double t = 0.0; t < 8.0; t += 0.25) {
                    double const v = h.evaluate(t);
                    EXPECT_GE(v, -1e-10);
                    EXPECT_LE(v, 1.0 + 1e-10);
                }
                row_at_t += h.evaluate(1.3);
            }
            EXPECT_NEAR(row_at_t, 1.0, 1e-10) << plan.describe() << " n=" << n;
        }
    }
}

TEST(ArrivalCountMixture, ProportionalMatchesBinomial)
{
    auto const plan = RatePlan::proportional(0.8, 5);
    double const t = 1.1;
    double const q = 1.0 - std::exp(-0.8 * t);
    for (int i = 0; i <= 5; ++i) {
        double const binom = std::tgamma(6.0) / (std::tgamma(i + 1.0) * std::tgamma(6.0 - i)) *
                             std::pow(q, i) * std::pow(1.0 - q, 5 - i);
        EXPECT_NEAR(arrival_count_mixture(plan, 5, i).evaluate(t), binom, 1e-13);
    }
}

TEST(ArrivalCountMixture, MatchesSimulatedCounts)
{
    for (auto const& plan : plans(4)) {
        double const t = 1.4;
        auto const est = simulate_arrival_counts(plan, 4, t, 1000000, 11);
        for (int i = 0; i <= 4; ++i) {
            double const exact = arrival_count_mixture(plan, 4, i).evaluate(t);
            EXPECT_NEAR(est[i].mean, exact, 4.0 * est[i].standard_error + 1e-12)
                << plan.describe() << " i=" << i;
        }
    }
}

TEST(KernelTables, ExponentialSingleArrivalExample)
{
    auto const t = build_tables(RatePlan::proportional(1.0, 1), ServiceLaw::exponential(1.0), 1.0);
    EXPECT_NEAR(t.u(1, 0).real(), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(t.v(1, 0).real(), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(t.u(1, 1).real(), 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(t.v(1, 1).real(), 1.0 / 6.0, 1e-15);
    EXPECT_NEAR((t.u(1, 0) + t.u(1, 1)).real(), 0.5, 1e-15);
}

TEST(KernelTables, EmptyRowIsLst)
{
    for (auto const& law : laws()) {
        double const gamma = 0.6;
        auto const t = build_tables(RatePlan::constant(1.0, 2), law, gamma);
        double const b = law.lst(gamma).real();
        EXPECT_NEAR(t.u(0, 0).real(), b, 1e-15);
        EXPECT_NEAR(t.v(0, 0).real(), 1.0 - b, 1e-15);
    }
}

TEST(KernelTables, SumIdentitiesAndBounds)
{
    for (int m : {0, 3, 8}) {
        for (auto const& plan : plans(m)) {
            for (auto const& law : laws()) {
                for (double gamma : {0.3, 1.0, 3.0}) {
                    auto const t = build_tables(plan, law, gamma);
                    double const b = law.lst(gamma).real();
                    for (int n = 0; n <= m; ++n) {
                        double su = 0.0;
                        double sv = 0.0;
                        double sw = 0.0;
                        for (int i = 0; i <= n; ++i) {
                            su += t.u(n, i).real();
                            sv += t.v(n, i).real();
                            sw += t.w(n, i);
                            for (double x : {t.u(n, i).real(), t.v(n, i).real(), t.w(n, i)}) {
                                EXPECT_GE(x, -1e-12);
                                EXPECT_LE(x, 1.0 + 1e-12);
                            }
                        }
                        EXPECT_NEAR(su, b, 1e-10);
                        EXPECT_NEAR(sv, 1.0 - b, 1e-10);
                        EXPECT_NEAR(sw, 1.0, 1e-10);
                    }
                }
            }
        }
    }
}

TEST(KernelTables, ExponentialProportionality)
{
    double const mu = 1.4;
    for (auto const& plan : plans(6)) {
        for (double gamma : {0.3, 1.0, 3.0}) {
            auto const t = build_tables(plan, ServiceLaw::exponential(mu), gamma);
            std::vector<double> rates;
            for (int i = 1; i <= 6; ++i) {
                rates.push_back(plan.rate(i));
            }
            for (int n = 0; n <= 6; ++n) {
                for (int i = 0; i <= n; ++i) {
                    EXPECT_NEAR(gamma * t.u(n, i).real(), mu * t.v(n, i).real(), 1e-12);
                    EXPECT_NEAR(t.u(n, i).real(), exponential_u(rates, mu, gamma, n, i), 1e-12);
                }
            }
        }
    }
}

TEST(KernelTables, ConstantPlanByQuadrature)
{
    // u_{n,i} = E[e^{-gamma B} Poisson(i; lambda B)], v_{n,i} = gamma int e^{-gamma t} Poisson(i; lambda t) P(B > t) dt.
    double const lambda = 1.2;
    double const gamma = 0.8;
    double const mu = 2.5;
    auto const erl = build_tables(RatePlan::constant(lambda, 4), ServiceLaw::erlang(2, mu), gamma);
    auto const det = build_tables(RatePlan::constant(lambda, 4), ServiceLaw::deterministic(1.3), gamma);
    for (int i = 0; i < 4; ++i) {
        double const u_erl = simpson(
            [&](double t) {
                return mu * mu * t * std::exp(-mu * t) * std::exp(-gamma * t) * poisson_pmf(i, lambda * t);
            },
            0.0, 40.0, 20000);
        double const v_erl = simpson(
            [&](double t) {
                return gamma * std::exp(-gamma * t) * poisson_pmf(i, lambda * t) *
                       (1.0 + mu * t) * std::exp(-mu * t);
            },
            0.0, 40.0, 20000);
        EXPECT_NEAR(erl.u(4, i).real(), u_erl, 1e-10);
        EXPECT_NEAR(erl.v(4, i).real(), v_erl, 1e-10);

        EXPECT_NEAR(det.u(4, i).real(), std::exp(-gamma * 1.3) * poisson_pmf(i, lambda * 1.3), 1e-14);
        double const v_det = simpson(
            [&](double t) { return gamma * std::exp(-gamma * t) * poisson_pmf(i, lambda * t); },
            0.0, 1.3, 2000);
        EXPECT_NEAR(det.v(4, i).real(), v_det, 1e-11);
    }
}

TEST(KernelTables, GammaZeroConvention)
{
    for (auto const& law : laws()) {
        auto const t = build_tables(RatePlan::proportional(0.9, 4), law, 0.0);
        for (int n = 0; n <= 4; ++n) {
            for (int i = 0; i <= n; ++i) {
                EXPECT_EQ(t.v(n, i).real(), 0.0);
                EXPECT_NEAR(t.u(n, i).real(), t.w(n, i), 1e-14);
            }
        }
    }
}

TEST(KernelTables, SmallGammaApproachesW)
{
    for (auto const& plan : plans(5)) {
        for (auto const& law : laws()) {
            auto const t = build_tables(plan, law, 1e-8);
            for (int n = 0; n <= 5; ++n) {
                for (int i = 0; i <= n; ++i) {
                    EXPECT_NEAR(t.u(n, i).real(), t.w(n, i), 1e-6);
                }
            }
        }
    }
}

TEST(KernelTables, GeneralNearConstantIsContinuous)
{
    // Larger pools with this gap trip the conditioning guard.
    double const lambda = 1.1;
    int const m = 3;
    std::vector<double> rates;
    for (int i = 0; i < m; ++i) {
        rates.push_back(lambda + i * 1e-4 * lambda);
    }
    for (auto const& law : laws()) {
        auto const a = build_tables(RatePlan::constant(lambda, m), law, 0.7);
        auto const b = build_tables(RatePlan::general(rates), law, 0.7);
        for (int n = 0; n <= m; ++n) {
            for (int i = 0; i <= n; ++i) {
                EXPECT_NEAR(a.u(n, i).real(), b.u(n, i).real(), 1e-3);
                EXPECT_NEAR(a.v(n, i).real(), b.v(n, i).real(), 1e-3);
            }
        }
    }
}

TEST(KernelTables, NearCollisionLargePoolHitsGuard)
{
    std::vector<double> rates;
    for (int i = 0; i < 5; ++i) {
        rates.push_back(1.1 + i * 1.1e-4);
    }
    EXPECT_THROW(build_tables(RatePlan::general(rates), ServiceLaw::exponential(1.0), 0.7),
                 ConditioningError);
}

TEST(KernelTables, VAlphaExamples)
{
    double const gamma = 1.3;
    double const mu = 0.9;
    auto const t = build_tables(RatePlan::constant(1.0, 3), ServiceLaw::exponential(mu), gamma);
    for (int n = 0; n <= 3; ++n) {
        for (int i = 0; i <= n; ++i) {
            EXPECT_LT(std::abs(t.v_alpha(n, i, 0.0) - t.v(n, i)), 1e-14);
        }
    }
    for (double alpha : {0.0, 0.5, 2.0}) {
        double const expect = gamma / (gamma + mu) * mu / (mu + alpha);
        EXPECT_NEAR(t.v_alpha(0, 0, alpha).real(), expect, 1e-15);
    }
    auto const one = build_tables(RatePlan::constant(1.0, 1), ServiceLaw::exponential(1.0), 1.0);
    EXPECT_NEAR((one.v_alpha(1, 0, 0.0) + one.v_alpha(1, 1, 0.0)).real(), 0.5, 1e-15);
}

TEST(KernelTables, VAlphaByQuadrature)
{
    // Deterministic d: v_{n,i}(alpha) = gamma int_0^d e^{-(gamma - alpha) t} h(t) e^{-alpha d} dt.
    double const gamma = 0.9;
    double const d = 1.1;
    double const lambda = 1.4;
    double const alpha = 0.6;
    auto const t = build_tables(RatePlan::constant(lambda, 3), ServiceLaw::deterministic(d), gamma);
    for (int i = 0; i < 3; ++i) {
        double const expect = simpson(
            [&](double s) {
                return gamma * std::exp(-(gamma - alpha) * s) * poisson_pmf(i, lambda * s) *
                       std::exp(-alpha * d);
            },
            0.0, d, 4000);
        EXPECT_NEAR(t.v_alpha(3, i, alpha).real(), expect, 1e-12);
    }
}

TEST(KernelTables, Errors)
{
    EXPECT_THROW(build_tables(RatePlan::constant(1.0, 2), ServiceLaw::pareto(1.5, 1.0), 1.0),
                 UnsupportedTransform);
    // gamma + rates stay distinct, but 12 clustered rates blow up the partial fractions.
    std::vector<double> clustered;
    for (int i = 0; i < 12; ++i) {
        clustered.push_back(1.0 + i * 1e-3);
    }
    EXPECT_THROW(build_tables(RatePlan::general(clustered), ServiceLaw::exponential(1.0), 1.0),
                 ConditioningError);
    EXPECT_THROW(RatePlan::general({1.0, 1.0 + 1e-10}), ParameterError);
}

TEST(KernelTables, MonteCarloEventFrequencies)
{
    double const gamma = 0.8;
    auto const law = ServiceLaw::erlang(2, 2.0);
    std::uint64_t seed = 100;
    for (auto const& plan : plans(3)) {
        auto const t = build_tables(plan, law, gamma);
        auto const est = simulate_kernel_events(plan, law, gamma, 3, 1000000, seed++);
        for (int i = 0; i <= 3; ++i) {
            EXPECT_NEAR(est.u[i].mean, t.u(3, i).real(), 4.0 * est.u[i].standard_error + 1e-12)
                << plan.describe() << " i=" << i;
            EXPECT_NEAR(est.v[i].mean, t.v(3, i).real(), 4.0 * est.v[i].standard_error + 1e-12);
            EXPECT_NEAR(est.w[i].mean, t.w(3, i), 4.0 * est.w[i].standard_error + 1e-12);
        }
    }
}

}  // namespace
}  // namespace fcpool
