#include "fcpool/exp_poly.hpp"

#include <cmath>
#include <string>

#include "fcpool/errors.hpp"
#include "fcpool/numeric.hpp"

namespace fcpool {

double ExpPolyMixture::evaluate(double t) const
{
    double total = 0.0;
    for (ExpPolyTerm const& term : terms) {
        total += term.coef * poisson_factor(term.rate * t, term.power) * std::exp(-term.rate * t);
    }
    return total;
}

double ExpPolyMixture::max_abs_coef() const
{
    double out = 0.0;
    for (ExpPolyTerm const& term : terms) {
        out = std::max(out, std::abs(term.coef));
    }
    return out;
}

namespace {

ExpPolyMixture constant_mixture(double lambda, int n, int i)
{
    if (i < n) {
        return {{{1.0, i, lambda}}};
    }
    ExpPolyMixture out;
    out.terms.push_back({1.0, 0, 0.0});
    for (int q = 0; q < n; ++q) {
        out.terms.push_back({-1.0, q, lambda});
    }
    return out;
}

// C(n,i) (1 - e^{-lambda t})^i e^{-(n-i) lambda t}, expanded binomially.
ExpPolyMixture proportional_mixture(double lambda, int n, int i)
{
    ExpPolyMixture out;
    double const outer = binomial(n, i);
    for (int j = 0; j <= i; ++j) {
        double const sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
        out.terms.push_back({sign * outer * binomial(i, j), 0, (n - j) * lambda});
    }
    return out;
}

// Hypoexponential partial fractions over the rates lambda_n, lambda_{n-1}, ...
ExpPolyMixture general_mixture(RatePlan const& plan, int n, int i)
{
    std::vector<double> nu(static_cast<std::size_t>(std::min(i + 1, n)));
    for (std::size_t l = 0; l < nu.size(); ++l) {
        nu[l] = plan.rate(n - static_cast<int>(l));
    }
    ExpPolyMixture out;
    if (i < n) {
        // Density of the (i+1)-th arrival epoch divided by its last rate.
        double lead = 1.0;
        for (int l = 0; l < i; ++l) {
            lead *= nu[l];
        }
        for (int j = 0; j <= i; ++j) {
            double denom = 1.0;
            for (int l = 0; l <= i; ++l) {
                if (l != j) {
                    denom *= nu[l] - nu[j];
                }
            }
            out.terms.push_back({lead / denom, 0, nu[j]});
        }
        return out;
    }
    out.terms.push_back({1.0, 0, 0.0});
    for (int j = 0; j < n; ++j) {
        double weight = 1.0;
        for (int l = 0; l < n; ++l) {
            if (l != j) {
                weight *= nu[l] / (nu[l] - nu[j]);
            }
        }
        out.terms.push_back({-weight, 0, nu[j]});
    }
    return out;
}

}  // namespace

ExpPolyMixture arrival_count_mixture(RatePlan const& plan, int n, int i)
{
    if (n < 0 || i < 0 || i > n || n > plan.pool_size()) {
        throw IndexError("arrival_count_mixture index (" + std::to_string(n) + ", " +
                         std::to_string(i) + ") outside 0 <= i <= n <= " +
                         std::to_string(plan.pool_size()));
    }
    if (n == 0) {
        return {{{1.0, 0, 0.0}}};
    }
    ExpPolyMixture out;
    switch (plan.kind()) {
    case RatePlan::Kind::constant:
        out = constant_mixture(plan.base_rate(), n, i);
        break;
    case RatePlan::Kind::proportional:
        out = proportional_mixture(plan.base_rate(), n, i);
        break;
    case RatePlan::Kind::general:
        out = general_mixture(plan, n, i);
        break;
    }
    if (out.max_abs_coef() > kMaxMixtureCoef) {
        throw ConditioningError("arrival-count mixture (" + std::to_string(n) + ", " +
                                std::to_string(i) +
                                ") has coefficients above 1e12; use a smaller pool or the "
                                "constant plan");
    }
    return out;
}

}  // namespace fcpool
