#include "fcpool/waiting.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "fcpool/errors.hpp"

namespace fcpool {

DepartureChainState DepartureChainState::initial(int k, int m)
{
    if (k < 0 || m < 0) {
        throw ParameterError("chain needs k, m >= 0");
    }
    DepartureChainState state{k, m, 0, {}};
    state.probs.assign(static_cast<std::size_t>(k + m + 1) * (m + 1), 0.0);
    state.probs[static_cast<std::size_t>(k) * (m + 1) + m] = 1.0;
    return state;
}

double DepartureChainState::at(int l, int n) const
{
    if (l < 0 || l > max_present() || n < 0 || n > m) {
        throw IndexError("chain state (" + std::to_string(l) + ", " + std::to_string(n) +
                         ") out of range");
    }
    return probs[static_cast<std::size_t>(l) * (m + 1) + n];
}

double DepartureChainState::total() const
{
    return std::accumulate(probs.begin(), probs.end(), 0.0);
}

double DepartureChainState::empty_probability() const
{
    double out = 0.0;
    for (int n = 0; n <= m; ++n) {
        out += probs[n];
    }
    return out;
}

DepartureChainState chain_step(DepartureChainState const& state, KernelTables const& tables)
{
    int const m = state.m;
    if (tables.pool_size() != m) {
        throw ParameterError("kernel tables and chain state disagree on the pool size");
    }
    DepartureChainState next = state;
    next.step = state.step + 1;
    std::fill(next.probs.begin(), next.probs.end(), 0.0);
    auto slot = [&](int l, int n) -> double& {
        return next.probs[static_cast<std::size_t>(l) * (m + 1) + n];
    };
    for (int l = 0; l <= state.max_present(); ++l) {
        for (int n = 0; n <= m; ++n) {
            double const mass = state.probs[static_cast<std::size_t>(l) * (m + 1) + n];
            if (mass == 0.0) {
                continue;
            }
            if (l + n > state.max_present()) {
                throw IndexError("chain mass at unreachable state (" + std::to_string(l) + ", " +
                                 std::to_string(n) + ")");
            }
            if (l == 0 && n == 0) {
                slot(0, 0) += mass;
            } else if (l >= 1) {
                // A service starts now; i of the n outstanding customers arrive during it.
                for (int i = 0; i <= n; ++i) {
                    slot(l - 1 + i, n - i) += mass * tables.w(n, i);
                }
            } else {
                // Idle until the next arrival; its service sees n - 1 outstanding.
                for (int i = 0; i <= n - 1; ++i) {
                    slot(i, n - 1 - i) += mass * tables.w(n - 1, i);
                }
            }
        }
    }
    return next;
}

DepartureChainState chain_step(DepartureChainState const& state, RatePlan const& plan,
                               ServiceLaw const& law)
{
    return chain_step(state, build_tables(plan, law, 0.0));
}

std::vector<double> emptiness_probs(Model const& model)
{
    int const k = model.k;
    int const m = model.m();
    std::vector<double> rho;
    if (m == 0) {
        return rho;
    }
    KernelTables const tables = build_tables(model.plan, model.law, 0.0);
    DepartureChainState state = DepartureChainState::initial(k, m);
    for (int step = 0; step < k; ++step) {
        state = chain_step(state, tables);
    }
    rho.reserve(static_cast<std::size_t>(m));
    for (int h = k + 1; h <= k + m; ++h) {
        // state.step == h - 1 here.
        rho.push_back(state.empty_probability());
        if (h < k + m) {
            state = chain_step(state, tables);
        }
    }
    return rho;
}

WaitingTimes::WaitingTimes(Model model) : model_(std::move(model))
{
    rho_ = emptiness_probs(model_);
}

void WaitingTimes::check_customer(int j) const
{
    if (j < 1 || j > model_.customers()) {
        throw IndexError("customer index " + std::to_string(j) + " outside 1.." +
                         std::to_string(model_.customers()));
    }
}

Complex WaitingTimes::lst_closed_form(int j, Complex alpha) const
{
    int const k = model_.k;
    int const m = model_.m();
    Complex const beta = model_.law.lst(alpha);
    auto rate = [&](int n) { return model_.plan.rate(n); };
    auto ratio = [&](int n) { return rate(n) / (rate(n) - alpha); };

    Complex lead = std::pow(beta, j - 1);
    for (int i = 0; i <= j - k - 1; ++i) {
        lead *= ratio(m - i);
    }
    Complex correction = 0.0;
    for (int h = k + 1; h <= j; ++h) {
        Complex term = rho_[h - k - 1] * std::pow(beta, j - h) * alpha /
                       (rate(m - h + k + 1) - alpha);
        for (int w = 0; w <= j - 1 - h; ++w) {
            term *= ratio(m + k - h - w);
        }
        correction += term;
    }
    return lead - correction;
}

Complex WaitingTimes::lst(int j, Complex alpha) const
{
    check_customer(j);
    if (alpha.real() < 0.0) {
        throw DomainError("waiting-time LST requires Re alpha >= 0");
    }
    if (j <= model_.k) {
        return std::pow(model_.law.lst(alpha), j - 1);
    }
    // The factors lambda / (lambda - alpha) have removable poles on the real
    // axis; near one, average over a small circle (mean-value property).
    bool near_pole = false;
    for (double const lambda : model_.plan.rates()) {
        if (std::abs(alpha - lambda) < 1e-6 * lambda) {
            near_pole = true;
            break;
        }
    }
    if (!near_pole) {
        return lst_closed_form(j, alpha);
    }
    double const radius = 1e-4 * std::abs(alpha);
    Complex total = 0.0;
    for (int q = 0; q < 4; ++q) {
        Complex const shift = std::polar(radius, q * std::numbers::pi / 2.0);
        total += lst_closed_form(j, alpha + shift);
    }
    return total / 4.0;
}

double WaitingTimes::mean(int j) const
{
    check_customer(j);
    double const service_mean = model_.law.mean();
    if (!std::isfinite(service_mean)) {
        throw UnsupportedMean("waiting-time mean needs a finite service mean");
    }
    int const k = model_.k;
    int const m = model_.m();
    double out = (j - 1) * service_mean;
    if (j <= k) {
        return out;
    }
    for (int i = 0; i <= j - k - 1; ++i) {
        out -= 1.0 / model_.plan.rate(m - i);
    }
    for (int h = k + 1; h <= j; ++h) {
        out += rho_[h - k - 1] / model_.plan.rate(m - h + k + 1);
    }
    return out;
}

Complex waiting_lst(int j, Complex alpha, Model const& model)
{
    return WaitingTimes(model).lst(j, alpha);
}

double waiting_mean(int j, Model const& model)
{
    return WaitingTimes(model).mean(j);
}

double tail_asymptote(int j, double t, ServiceLaw const& law)
{
    auto const* pareto = std::get_if<ParetoService>(&law.family());
    if (pareto == nullptr || !(pareto->index > 1.0 && pareto->index < 2.0)) {
        throw DomainError("tail asymptote applies to Pareto service with index in (1, 2)");
    }
    if (j < 1) {
        throw IndexError("customer index must be at least 1");
    }
    return (j - 1) * law.tail(t);
}

}  // namespace fcpool
