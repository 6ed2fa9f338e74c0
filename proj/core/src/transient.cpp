#include "fcpool/transient.hpp"

#include <numeric>

#include "fcpool/errors.hpp"

namespace fcpool {

namespace {

using Poly = std::vector<Complex>;

// Forcing(l, n, i) is the coefficient attached to z^{l+i} in the recursion:
// v_{n,i} for the PGF, beta(alpha)^{l+i-1} v_{n,i}(alpha) for the joint transform.
//
// Level n (customers still to arrive) needs mu_{l,n} for l <= k + m - n,
// since mu_{l,n} reads mu_{l+i-1, n-i}. Levels are kept whole because row n
// reads every lower row.
template <class Forcing>
Poly run_recursion(int k, KernelTables const& tables, Forcing&& forcing)
{
    if (k < 0) {
        throw ParameterError("k must be non-negative");
    }
    int const m = tables.pool_size();
    int const top = k + m;
    Complex const gamma = tables.gamma();
    std::vector<std::vector<Poly>> levels(static_cast<std::size_t>(m) + 1);

    auto& base = levels[0];
    base.resize(static_cast<std::size_t>(top) + 1);
    base[0] = {1.0};
    Complex const u00 = tables.u(0, 0);
    for (int l = 1; l <= top; ++l) {
        Poly poly(static_cast<std::size_t>(l) + 1, 0.0);
        for (int d = 0; d < l; ++d) {
            poly[d] = u00 * base[l - 1][d];
        }
        poly[l] += forcing(l, 0, 0);
        base[l] = std::move(poly);
    }

    for (int n = 1; n <= m; ++n) {
        int const width = top - n;
        auto& row = levels[n];
        row.resize(static_cast<std::size_t>(width) + 1);

        // Empty system: either T fires first or the next arrival starts a busy period.
        double const lambda = tables.plan().rate(n);
        Complex const stop = gamma / (gamma + lambda);
        Complex const go = lambda / (gamma + lambda);
        Poly const& source = levels[n - 1][1];
        Poly empty(source.size());
        for (std::size_t d = 0; d < source.size(); ++d) {
            empty[d] = go * source[d];
        }
        empty[0] += stop;
        row[0] = std::move(empty);

        for (int l = 1; l <= width; ++l) {
            Poly poly(static_cast<std::size_t>(l + n) + 1, 0.0);
            for (int i = 0; i <= n; ++i) {
                Complex const weight = tables.u(n, i);
                Poly const& prev = levels[n - i][l + i - 1];
                for (std::size_t d = 0; d < prev.size(); ++d) {
                    poly[d] += weight * prev[d];
                }
                poly[l + i] += forcing(l, n, i);
            }
            row[l] = std::move(poly);
        }
    }
    Poly out = std::move(levels[m][k]);
    out.resize(static_cast<std::size_t>(top) + 1, 0.0);
    return out;
}

}  // namespace

double PgfPolynomial::evaluate(double z) const
{
    double value = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        value = value * z + *it;
    }
    return value;
}

double PgfPolynomial::total() const
{
    return std::accumulate(coeffs.begin(), coeffs.end(), 0.0);
}

Complex JointTransformValue::evaluate(Complex z) const
{
    Complex value = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        value = value * z + *it;
    }
    return value;
}

std::vector<Complex> pgf_coefficients(int k, KernelTables const& tables)
{
    return run_recursion(k, tables, [&](int, int n, int i) { return tables.v(n, i); });
}

std::vector<Complex> joint_coefficients(int k, KernelTables const& tables, Complex alpha)
{
    int const m = tables.pool_size();
    if (alpha.real() < 0.0) {
        throw DomainError("joint transform requires Re alpha >= 0");
    }
    std::vector<std::vector<Complex>> v_alpha(static_cast<std::size_t>(m) + 1);
    for (int n = 0; n <= m; ++n) {
        v_alpha[n] = tables.v_alpha_row(n, alpha);
    }
    // The job in service at T leaves B - T; the l + i - 1 queued jobs bring full B each.
    Complex const beta = tables.law().lst(alpha);
    std::vector<Complex> beta_pow(static_cast<std::size_t>(k + m) + 1);
    beta_pow[0] = 1.0;
    for (std::size_t j = 1; j < beta_pow.size(); ++j) {
        beta_pow[j] = beta_pow[j - 1] * beta;
    }
    return run_recursion(k, tables, [&](int l, int n, int i) {
        return beta_pow[l + i - 1] * v_alpha[n][i];
    });
}

std::vector<std::vector<Complex>> pgf_value_grid(int k, KernelTables const& tables, Complex z)
{
    if (k < 0) {
        throw ParameterError("k must be non-negative");
    }
    int const m = tables.pool_size();
    int const top = k + m;
    Complex const gamma = tables.gamma();

    std::vector<Complex> z_pow(static_cast<std::size_t>(top) + 1);
    z_pow[0] = 1.0;
    for (int d = 1; d <= top; ++d) {
        z_pow[d] = z_pow[d - 1] * z;
    }

    std::vector<std::vector<Complex>> levels(static_cast<std::size_t>(m) + 1);
    levels[0].resize(static_cast<std::size_t>(top) + 1);
    levels[0][0] = 1.0;
    Complex const u00 = tables.u(0, 0);
    Complex const v00 = tables.v(0, 0);
    for (int l = 1; l <= top; ++l) {
        levels[0][l] = levels[0][l - 1] * u00 + z_pow[l] * v00;
    }
    for (int n = 1; n <= m; ++n) {
        int const width = top - n;
        auto& row = levels[n];
        row.resize(static_cast<std::size_t>(width) + 1);
        double const lambda = tables.plan().rate(n);
        row[0] = (gamma + lambda * levels[n - 1][1]) / (gamma + lambda);

        // sum_i z^{l+i} v_{n,i} = z^l * forced.
        Complex forced = 0.0;
        for (int i = 0; i <= n; ++i) {
            forced += z_pow[i] * tables.v(n, i);
        }
        for (int l = 1; l <= width; ++l) {
            Complex acc = z_pow[l] * forced;
            for (int i = 0; i <= n; ++i) {
                acc += tables.u(n, i) * levels[n - i][l + i - 1];
            }
            row[l] = acc;
        }
    }
    return levels;
}

Complex pgf_value(int k, KernelTables const& tables, Complex z)
{
    return pgf_value_grid(k, tables, z)[static_cast<std::size_t>(tables.pool_size())]
                         [static_cast<std::size_t>(k)];
}

PgfPolynomial pgf(Model const& model, double gamma)
{
    KernelTables const tables = build_tables(model.plan, model.law, gamma);
    std::vector<Complex> const coeffs = pgf_coefficients(model.k, tables);
    PgfPolynomial out;
    out.coeffs.reserve(coeffs.size());
    for (Complex const c : coeffs) {
        out.coeffs.push_back(c.real());
    }
    return out;
}

JointTransformValue joint_transform(Model const& model, Complex gamma, Complex alpha)
{
    KernelTables const tables = build_tables(model.plan, model.law, gamma);
    return {alpha, joint_coefficients(model.k, tables, alpha)};
}

Complex workload_lst(int k, KernelTables const& tables, Complex alpha)
{
    std::vector<Complex> const coeffs = joint_coefficients(k, tables, alpha);
    return std::accumulate(coeffs.begin(), coeffs.end(), Complex(0.0));
}

Complex workload_lst(Model const& model, Complex gamma, Complex alpha)
{
    KernelTables const tables = build_tables(model.plan, model.law, gamma);
    return workload_lst(model.k, tables, alpha);
}

std::vector<double> pmf(Model const& model, double gamma)
{
    return pgf(model, gamma).coeffs;
}

std::vector<double> factorial_moments_from_pmf(std::vector<double> const& probs, int max_order)
{
    if (max_order < 0) {
        throw DomainError("moment order must be non-negative");
    }
    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    out[0] = 1.0;
    for (int r = 1; r <= max_order; ++r) {
        double total = 0.0;
        for (std::size_t l = static_cast<std::size_t>(r); l < probs.size(); ++l) {
            double falling = 1.0;
            for (int q = 0; q < r; ++q) {
                falling *= static_cast<double>(l) - q;
            }
            total += falling * probs[l];
        }
        out[r] = total;
    }
    return out;
}

std::vector<double> factorial_moments(Model const& model, double gamma, int max_order)
{
    return factorial_moments_from_pmf(pmf(model, gamma), max_order);
}

}  // namespace fcpool
