#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fcpool/errors.hpp"
#include "fcpool/service_law.hpp"

namespace fcpool {
namespace {

std::vector<ServiceLaw> transform_laws()
{
    return {ServiceLaw::exponential(1.3), ServiceLaw::erlang(3, 2.0),
            ServiceLaw::hyperexponential({0.3, 0.7}, {0.5, 4.0}), ServiceLaw::deterministic(0.8)};
}

TEST(ServiceLaw, LstExamples)
{
    EXPECT_NEAR(ServiceLaw::exponential(1.0).lst(1.0).real(), 0.5, 1e-15);
    EXPECT_NEAR(ServiceLaw::erlang(2, 2.0).lst(2.0).real(), 0.25, 1e-15);
    for (auto const& law : transform_laws()) {
        EXPECT_DOUBLE_EQ(law.lst(0.0).real(), 1.0) << law.describe();
    }
}

TEST(ServiceLaw, LstDerivativeExamples)
{
    EXPECT_NEAR(ServiceLaw::exponential(1.0).lst_derivative(1, 1.0).real(), -0.25, 1e-15);
    EXPECT_NEAR(ServiceLaw::deterministic(1.0).lst_derivative(2, 1.0).real(), std::exp(-1.0),
                1e-15);
    for (auto const& law : transform_laws()) {
        Complex const s(0.7, 0.2);
        EXPECT_LT(std::abs(law.lst_derivative(0, s) - law.lst(s)), 1e-15);
    }
}

TEST(ServiceLaw, SurvivalTransformExamples)
{
    EXPECT_NEAR(ServiceLaw::exponential(1.0).survival_transform_derivative(0, 1.0).real(), 0.5,
                1e-15);
    EXPECT_NEAR(ServiceLaw::deterministic(1.0).survival_transform_derivative(0, 1.0).real(),
                1.0 - std::exp(-1.0), 1e-14);
    for (auto const& law : transform_laws()) {
        EXPECT_NEAR(law.survival_transform_derivative(0, 1e-9).real(), law.mean(), 1e-7)
            << law.describe();
        EXPECT_THROW(law.survival_transform_derivative(0, 0.0), DomainError);
    }
}

TEST(ServiceLaw, KilledSurvivalExamples)
{
    auto const e = ServiceLaw::exponential(1.0);
    EXPECT_NEAR(e.killed_survival(1.0, 0.0).real(), 0.5, 1e-15);
    EXPECT_NEAR(e.killed_survival(0.0, 1.0).real(), std::exp(-1.0), 1e-15);
    EXPECT_EQ(ServiceLaw::deterministic(2.0).killed_survival(1.0, 3.0).real(), 0.0);
    // Closed endpoint: B = d counts as B >= d.
    EXPECT_NEAR(ServiceLaw::deterministic(2.0).killed_survival(1.0, 2.0).real(), std::exp(-2.0),
                1e-15);
}

TEST(ServiceLaw, TailAndMean)
{
    auto const pareto = ServiceLaw::pareto(1.5, 1.0);
    EXPECT_NEAR(pareto.tail(4.0), 0.125, 1e-15);
    EXPECT_DOUBLE_EQ(ServiceLaw::erlang(2, 2.0).mean(), 1.0);
    for (auto const& law : transform_laws()) {
        EXPECT_DOUBLE_EQ(law.tail(0.0), 1.0);
    }
    EXPECT_DOUBLE_EQ(pareto.tail(0.0), 1.0);
}

TEST(ServiceLaw, ParetoRejectsTransforms)
{
    auto const pareto = ServiceLaw::pareto(1.5, 1.0);
    EXPECT_FALSE(pareto.transform_capable());
    EXPECT_THROW(pareto.lst(1.0), UnsupportedTransform);
    EXPECT_THROW(pareto.lst_derivative(1, 1.0), UnsupportedTransform);
    EXPECT_THROW(pareto.survival_transform_derivative(0, 1.0), UnsupportedTransform);
    EXPECT_THROW(pareto.killed_survival(1.0, 1.0), UnsupportedTransform);
}

TEST(ServiceLaw, DomainAndParameterErrors)
{
    EXPECT_THROW(ServiceLaw::exponential(1.0).lst(Complex(-0.1, 0.0)), DomainError);
    EXPECT_THROW(ServiceLaw::exponential(1.0).lst_derivative(1, 0.0), DomainError);
    EXPECT_THROW(ServiceLaw::exponential(0.0), ParameterError);
    EXPECT_THROW(ServiceLaw::erlang(0, 1.0), ParameterError);
    EXPECT_THROW(ServiceLaw::hyperexponential({0.5, 0.4}, {1.0, 2.0}), ParameterError);
    EXPECT_THROW(ServiceLaw::hyperexponential({0.5, 0.5}, {1.0, 1.0 + 1e-10}), ParameterError);
    EXPECT_THROW(ServiceLaw::deterministic(-1.0), ParameterError);
    EXPECT_THROW(ServiceLaw::pareto(1.0, 1.0), ParameterError);
}

TEST(ServiceLaw, LstDecreasingOnGrid)
{
    for (auto const& law : transform_laws()) {
        double prev = 1.0;
        for (double s = 0.05; s <= 10.0; s += 0.05) {
            double const b = law.lst(s).real();
            EXPECT_GT(b, 0.0);
            EXPECT_LT(b, prev) << law.describe() << " s=" << s;
            prev = b;
        }
    }
}

TEST(ServiceLaw, CompleteMonotonicity)
{
    for (auto const& law : transform_laws()) {
        for (double s = 0.1; s <= 5.0; s += 0.7) {
            for (int j = 0; j <= 6; ++j) {
                double const sign = (j % 2 == 0) ? 1.0 : -1.0;
                EXPECT_GT(sign * law.lst_derivative(j, s).real(), 0.0)
                    << law.describe() << " j=" << j << " s=" << s;
            }
        }
    }
}

TEST(ServiceLaw, DerivativesMatchTaylorOfRationalForms)
{
    // beta^(j)(s) for Exp(mu): (-1)^j j! mu / (mu + s)^(j+1).
    double const mu = 1.7;
    auto const e = ServiceLaw::exponential(mu);
    double fact = 1.0;
    for (int j = 0; j <= 6; ++j) {
        if (j > 0) {
            fact *= j;
        }
        double const s = 0.9;
        double const expect = std::pow(-1.0, j) * fact * mu / std::pow(mu + s, j + 1);
        EXPECT_NEAR(e.lst_derivative(j, s).real(), expect, 1e-12 * std::abs(expect));
    }
}

TEST(ServiceLaw, SurvivalIdentityAtRandomPoints)
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> pick(1e-3, 10.0);
    for (auto const& law : transform_laws()) {
        for (int q = 0; q < 20; ++q) {
            double const s = pick(gen);
            double const lhs = law.survival_transform_derivative(0, s).real() * s +
                               law.lst(s).real();
            EXPECT_NEAR(lhs, 1.0, 1e-12) << law.describe() << " s=" << s;
        }
    }
}

TEST(ServiceLaw, KilledSurvivalAtZeroAlphaIsTail)
{
    for (auto const& law : {ServiceLaw::exponential(1.3), ServiceLaw::erlang(3, 2.0),
                            ServiceLaw::hyperexponential({0.3, 0.7}, {0.5, 4.0})}) {
        for (double t = 0.0; t < 5.0; t += 0.37) {
            EXPECT_NEAR(law.killed_survival(0.0, t).real(), law.tail(t), 1e-12);
        }
    }
}

TEST(ServiceLaw, MonteCarloMeans)
{
    std::vector<ServiceLaw> laws = transform_laws();
    laws.push_back(ServiceLaw::pareto(3.5, 1.0));
    std::uint64_t stream = 0;
    for (auto const& law : laws) {
        RandomStream rng(2024, stream++);
        int const n = 1000000;
        double sum = 0.0;
        double sum_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            double const b = law.sample(rng);
            sum += b;
            sum_sq += b * b;
        }
        double const mean = sum / n;
        double const se = std::sqrt(std::max(sum_sq / n - mean * mean, 0.0) / n);
        // The slack covers summation rounding for the deterministic law.
        double const tol = 4.0 * se + 1e-9;
        EXPECT_NEAR(mean, law.mean(), tol) << law.describe();
    }
}

TEST(ServiceLaw, SamplingIsReproducible)
{
    auto const law = ServiceLaw::hyperexponential({0.3, 0.7}, {0.5, 4.0});
    RandomStream a(5, 9);
    RandomStream b(5, 9);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(law.sample(a), law.sample(b));
    }
}

TEST(ServiceLaw, Describe)
{
    EXPECT_EQ(ServiceLaw::exponential(1.0).describe(), "exp:1");
    EXPECT_EQ(ServiceLaw::erlang(2, 2.5).describe(), "erlang:2:2.5");
    EXPECT_EQ(ServiceLaw::deterministic(0.5).describe(), "det:0.5");
}

}  // namespace
}  // namespace fcpool
