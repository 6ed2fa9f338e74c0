#include "fcpool/kernels.hpp"

#include <string>

#include "fcpool/errors.hpp"
#include "fcpool/numeric.hpp"

namespace fcpool {

namespace {

inline std::size_t tri(int n, int i)
{
    return static_cast<std::size_t>(n) * (n + 1) / 2 + i;
}

void check_shifted_rates(RatePlan const& plan, Complex gamma)
{
    if (plan.kind() != RatePlan::Kind::general) {
        return;
    }
    auto const& rates = plan.rates();
    for (std::size_t a = 0; a < rates.size(); ++a) {
        for (std::size_t b = a + 1; b < rates.size(); ++b) {
            if (!rates_distinct(gamma + rates[a], gamma + rates[b])) {
                throw RateCollision("shifted rates gamma + lambda_" + std::to_string(a + 1) +
                                    " and gamma + lambda_" + std::to_string(b + 1) +
                                    " are closer than the 1e-8 relative gap");
            }
        }
    }
}

}  // namespace

std::size_t KernelTables::index(int n, int i) const
{
    if (n < 0 || n > pool_size() || i < 0 || i > n) {
        throw IndexError("kernel index (" + std::to_string(n) + ", " + std::to_string(i) +
                         ") outside 0 <= i <= n <= " + std::to_string(pool_size()));
    }
    return tri(n, i);
}

ExpPolyMixture const& KernelTables::mixture(int n, int i) const
{
    if (i >= n) {
        throw IndexError("mixtures are stored for i < n only");
    }
    return mixtures_[index(n, i)];
}

Complex KernelTables::v_alpha_direct(int n, int i, Complex alpha) const
{
    if (n == 0) {
        return gamma_ * law_.killed_survival_integral(gamma_ - alpha, alpha, 0.0, 0);
    }
    Complex total = 0.0;
    for (ExpPolyTerm const& term : mixtures_[tri(n, i)].terms) {
        total += term.coef * law_.killed_survival_integral(gamma_ - alpha + term.rate, alpha,
                                                           term.rate, term.power);
    }
    return gamma_ * total;
}

Complex KernelTables::v_alpha(int n, int i, Complex alpha) const
{
    index(n, i);
    if (alpha.real() < 0.0) {
        throw DomainError("v_alpha requires Re alpha >= 0");
    }
    if (i < n) {
        return v_alpha_direct(n, i, alpha);
    }
    // Row complement: the row sums to v_{00}(alpha).
    Complex rest = v_alpha_direct(0, 0, alpha);
    for (int j = 0; j < n; ++j) {
        rest -= v_alpha_direct(n, j, alpha);
    }
    return rest;
}

std::vector<Complex> KernelTables::v_alpha_row(int n, Complex alpha) const
{
    index(n, 0);
    if (alpha.real() < 0.0) {
        throw DomainError("v_alpha requires Re alpha >= 0");
    }
    std::vector<Complex> row(static_cast<std::size_t>(n) + 1);
    Complex rest = v_alpha_direct(0, 0, alpha);
    for (int i = 0; i < n; ++i) {
        row[i] = v_alpha_direct(n, i, alpha);
        rest -= row[i];
    }
    row[n] = rest;
    return row;
}

KernelTables build_tables(RatePlan const& plan, ServiceLaw const& law, Complex gamma)
{
    if (!law.transform_capable()) {
        throw UnsupportedTransform("kernel tables need a transform-capable service law");
    }
    check_shifted_rates(plan, gamma);

    KernelTables tables(plan, law, gamma);
    int const m = plan.pool_size();
    std::size_t const size = tri(m, m) + 1;
    tables.u_.assign(size, 0.0);
    tables.v_.assign(size, 0.0);
    tables.w_.assign(size, 0.0);
    tables.mixtures_.assign(size, {});

    Complex const beta_gamma = law.weighted_lst(gamma, 0.0, 0);
    for (int n = 0; n <= m; ++n) {
        Complex u_rest = beta_gamma;
        Complex v_rest = 1.0 - beta_gamma;
        double w_rest = 1.0;
        for (int i = 0; i < n; ++i) {
            ExpPolyMixture mixture = arrival_count_mixture(plan, n, i);
            Complex u = 0.0;
            Complex v = 0.0;
            double w = 0.0;
            for (ExpPolyTerm const& term : mixture.terms) {
                u += term.coef * law.weighted_lst(gamma + term.rate, term.rate, term.power);
                v += term.coef *
                     law.killed_survival_integral(gamma + term.rate, 0.0, term.rate, term.power);
                w += term.coef * law.weighted_lst(term.rate, term.rate, term.power).real();
            }
            v *= gamma;
            std::size_t const at = tri(n, i);
            tables.u_[at] = u;
            tables.v_[at] = v;
            tables.w_[at] = w;
            tables.mixtures_[at] = std::move(mixture);
            u_rest -= u;
            v_rest -= v;
            w_rest -= w;
        }
        std::size_t const last = tri(n, n);
        tables.u_[last] = u_rest;
        tables.v_[last] = v_rest;
        tables.w_[last] = w_rest;
    }
    return tables;
}

}  // namespace fcpool
