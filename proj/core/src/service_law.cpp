#include "fcpool/service_law.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "fcpool/errors.hpp"
#include "fcpool/numeric.hpp"

namespace fcpool {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, char const* what)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParameterError(std::string(what) + " must be positive and finite");
    }
}

// Closed-form pieces shared by the exponential and hyperexponential families.
Complex exp_weighted_lst(double mu, Complex s, double a, int p)
{
    Complex const w = mu + s;
    return (mu / w) * ipow(a / w, p);
}

Complex exp_killed_survival_integral(double mu, Complex s, Complex alpha, double a, int p)
{
    Complex const w = s + mu + alpha;
    return (mu / (mu + alpha)) * ipow(a / w, p) / w;
}

Complex exp_lst_derivative(double mu, int j, Complex s)
{
    Complex const w = mu + s;
    double const sign = (j % 2 == 0) ? 1.0 : -1.0;
    return sign * factorial(j) * mu / ipow(w, j + 1);
}

}  // namespace

ServiceLaw ServiceLaw::exponential(double rate)
{
    require_positive(rate, "exponential rate");
    return ServiceLaw(ExponentialService{rate});
}

ServiceLaw ServiceLaw::erlang(int shape, double rate)
{
    if (shape < 1) {
        throw ParameterError("erlang shape must be a positive integer");
    }
    require_positive(rate, "erlang rate");
    return ServiceLaw(ErlangService{shape, rate});
}

ServiceLaw ServiceLaw::hyperexponential(std::vector<double> weights, std::vector<double> rates)
{
    if (weights.empty() || weights.size() != rates.size()) {
        throw ParameterError("hyperexponential needs matching, non-empty weights and rates");
    }
    for (double const w : weights) {
        require_positive(w, "hyperexponential weight");
    }
    for (double const r : rates) {
        require_positive(r, "hyperexponential rate");
    }
    double const total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) {
        throw ParameterError("hyperexponential weights must sum to 1");
    }
    for (std::size_t i = 0; i < rates.size(); ++i) {
        for (std::size_t j = i + 1; j < rates.size(); ++j) {
            if (!rates_distinct(rates[i], rates[j])) {
                throw ParameterError(
                    "hyperexponential rates must be distinct (relative gap >= 1e-8); "
                    "merge coincident phases into an Erlang mixture instead");
            }
        }
    }
    return ServiceLaw(HyperExponentialService{std::move(weights), std::move(rates)});
}

ServiceLaw ServiceLaw::deterministic(double value)
{
    require_positive(value, "deterministic service time");
    return ServiceLaw(DeterministicService{value});
}

ServiceLaw ServiceLaw::pareto(double index, double scale)
{
    require_positive(scale, "pareto scale");
    if (!(index > 1.0) || !std::isfinite(index)) {
        throw ParameterError("pareto index must exceed 1");
    }
    return ServiceLaw(ParetoService{index, scale});
}

bool ServiceLaw::transform_capable() const noexcept
{
    return !std::holds_alternative<ParetoService>(family_);
}

bool ServiceLaw::is_exponential() const noexcept
{
    return std::holds_alternative<ExponentialService>(family_);
}

std::string ServiceLaw::describe() const
{
    auto num = [](double x) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof(buf), x);
        return std::string(buf, res.ptr);
    };
    return std::visit(
        Overloaded{
            [&](ExponentialService const& e) { return "exp:" + num(e.rate); },
            [&](ErlangService const& e) {
                return "erlang:" + std::to_string(e.shape) + ":" + num(e.rate);
            },
            [&](HyperExponentialService const& h) {
                std::string out = "hyperexp:";
                for (std::size_t i = 0; i < h.rates.size(); ++i) {
                    if (i > 0) {
                        out += ",";
                    }
                    out += num(h.weights[i]) + "@" + num(h.rates[i]);
                }
                return out;
            },
            [&](DeterministicService const& d) { return "det:" + num(d.value); },
            [&](ParetoService const& p) { return "pareto:" + num(p.index) + ":" + num(p.scale); },
        },
        family_);
}

void ServiceLaw::require_transform(char const* op) const
{
    if (!transform_capable()) {
        throw UnsupportedTransform(std::string(op) + " is not available for the Pareto law "
                                   "(simulation-only: tail, mean, sample)");
    }
}

Complex ServiceLaw::lst(Complex s) const
{
    require_transform("lst");
    if (s.real() < 0.0) {
        throw DomainError("lst requires Re s >= 0");
    }
    return weighted_lst(s, 0.0, 0);
}

Complex ServiceLaw::lst_derivative(int order, Complex s) const
{
    require_transform("lst_derivative");
    if (order < 0) {
        throw DomainError("derivative order must be non-negative");
    }
    if (!(s.real() > 0.0)) {
        throw DomainError("lst_derivative requires Re s > 0");
    }
    int const j = order;
    return std::visit(
        Overloaded{
            [&](ExponentialService const& e) { return exp_lst_derivative(e.rate, j, s); },
            [&](ErlangService const& e) {
                Complex const w = e.rate + s;
                double rising = 1.0;
                for (int i = 0; i < j; ++i) {
                    rising *= e.shape + i;
                }
                double const sign = (j % 2 == 0) ? 1.0 : -1.0;
                return sign * rising * ipow(e.rate / w, e.shape) / ipow(w, j);
            },
            [&](HyperExponentialService const& h) {
                Complex total = 0.0;
                for (std::size_t i = 0; i < h.rates.size(); ++i) {
                    total += h.weights[i] * exp_lst_derivative(h.rates[i], j, s);
                }
                return total;
            },
            [&](DeterministicService const& d) {
                return ipow(Complex(-d.value), j) * std::exp(-s * d.value);
            },
            [&](ParetoService const&) -> Complex { return 0.0; },
        },
        family_);
}

Complex ServiceLaw::survival_transform_derivative(int order, Complex s) const
{
    require_transform("survival_transform_derivative");
    if (order < 0) {
        throw DomainError("derivative order must be non-negative");
    }
    if (!(s.real() > 0.0)) {
        throw DomainError("survival_transform_derivative requires Re s > 0");
    }
    double const sign = (order % 2 == 0) ? 1.0 : -1.0;
    return sign * factorial(order) * killed_survival_integral(s, 0.0, 1.0, order);
}

Complex ServiceLaw::killed_survival(Complex alpha, double t) const
{
    require_transform("killed_survival");
    if (t < 0.0) {
        throw DomainError("killed_survival requires t >= 0");
    }
    auto exp_part = [&](double mu) {
        return (mu / (mu + alpha)) * std::exp(-(mu + alpha) * t);
    };
    return std::visit(
        Overloaded{
            [&](ExponentialService const& e) { return exp_part(e.rate); },
            [&](ErlangService const& e) {
                Complex const shifted = e.rate + alpha;
                Complex term = 1.0;
                Complex partial = 1.0;
                for (int q = 1; q < e.shape; ++q) {
                    term *= shifted * t / static_cast<double>(q);
                    partial += term;
                }
                return ipow(e.rate / shifted, e.shape) * std::exp(-shifted * t) * partial;
            },
            [&](HyperExponentialService const& h) {
                Complex total = 0.0;
                for (std::size_t i = 0; i < h.rates.size(); ++i) {
                    total += h.weights[i] * exp_part(h.rates[i]);
                }
                return total;
            },
            [&](DeterministicService const& d) -> Complex {
                // B = d counts as B >= d.
                return t <= d.value ? std::exp(-alpha * d.value) : Complex(0.0);
            },
            [&](ParetoService const&) -> Complex { return 0.0; },
        },
        family_);
}

double ServiceLaw::tail(double t) const
{
    if (t <= 0.0) {
        return 1.0;
    }
    return std::visit(
        Overloaded{
            [&](ExponentialService const& e) { return std::exp(-e.rate * t); },
            [&](ErlangService const& e) {
                double term = 1.0;
                double partial = 1.0;
                for (int q = 1; q < e.shape; ++q) {
                    term *= e.rate * t / q;
                    partial += term;
                }
                return std::exp(-e.rate * t) * partial;
            },
            [&](HyperExponentialService const& h) {
                double total = 0.0;
                for (std::size_t i = 0; i < h.rates.size(); ++i) {
                    total += h.weights[i] * std::exp(-h.rates[i] * t);
                }
                return total;
            },
            [&](DeterministicService const& d) { return t < d.value ? 1.0 : 0.0; },
            [&](ParetoService const& p) {
                return t < p.scale ? 1.0 : std::pow(t / p.scale, -p.index);
            },
        },
        family_);
}

double ServiceLaw::mean() const
{
    return std::visit(
        Overloaded{
            [](ExponentialService const& e) { return 1.0 / e.rate; },
            [](ErlangService const& e) { return e.shape / e.rate; },
            [](HyperExponentialService const& h) {
                double total = 0.0;
                for (std::size_t i = 0; i < h.rates.size(); ++i) {
                    total += h.weights[i] / h.rates[i];
                }
                return total;
            },
            [](DeterministicService const& d) { return d.value; },
            [](ParetoService const& p) { return p.index * p.scale / (p.index - 1.0); },
        },
        family_);
}

double ServiceLaw::sample(RandomStream& rng) const
{
    return std::visit(
        Overloaded{
            [&](ExponentialService const& e) { return rng.exponential(e.rate); },
            [&](ErlangService const& e) {
                double total = 0.0;
                for (int q = 0; q < e.shape; ++q) {
                    total += rng.exponential(e.rate);
                }
                return total;
            },
            [&](HyperExponentialService const& h) {
                double const u = rng.uniform();
                double cumulative = 0.0;
                std::size_t phase = h.rates.size() - 1;
                for (std::size_t i = 0; i + 1 < h.rates.size(); ++i) {
                    cumulative += h.weights[i];
                    if (u < cumulative) {
                        phase = i;
                        break;
                    }
                }
                return rng.exponential(h.rates[phase]);
            },
            [&](DeterministicService const& d) { return d.value; },
            [&](ParetoService const& p) {
                return p.scale * std::pow(rng.uniform(), -1.0 / p.index);
            },
        },
        family_);
}

Complex ServiceLaw::weighted_lst(Complex s, double a, int p) const
{
    require_transform("weighted_lst");
    return std::visit(
        Overloaded{
            [&](ExponentialService const& e) { return exp_weighted_lst(e.rate, s, a, p); },
            [&](ErlangService const& e) {
                Complex const w = e.rate + s;
                return binomial(e.shape - 1 + p, p) * ipow(e.rate / w, e.shape) * ipow(a / w, p);
            },
            [&](HyperExponentialService const& h) {
                Complex total = 0.0;
                for (std::size_t i = 0; i < h.rates.size(); ++i) {
                    total += h.weights[i] * exp_weighted_lst(h.rates[i], s, a, p);
                }
                return total;
            },
            [&](DeterministicService const& d) {
                return poisson_factor(a * d.value, p) * std::exp(-s * d.value);
            },
            [&](ParetoService const&) -> Complex { return 0.0; },
        },
        family_);
}

Complex ServiceLaw::killed_survival_integral(Complex s, Complex alpha, double a, int p) const
{
    require_transform("killed_survival_integral");
    return std::visit(
        Overloaded{
            [&](ExponentialService const& e) {
                return exp_killed_survival_integral(e.rate, s, alpha, a, p);
            },
            [&](ErlangService const& e) {
                // Psi(alpha, t) is an Erlang survival function in the shifted rate.
                Complex const shifted = e.rate + alpha;
                Complex const w = s + shifted;
                Complex const lead = ipow(e.rate / shifted, e.shape) * ipow(a / w, p) / w;
                Complex total = 0.0;
                Complex ratio_pow = 1.0;
                for (int q = 0; q < e.shape; ++q) {
                    total += binomial(p + q, q) * ratio_pow;
                    ratio_pow *= shifted / w;
                }
                return lead * total;
            },
            [&](HyperExponentialService const& h) {
                Complex total = 0.0;
                for (std::size_t i = 0; i < h.rates.size(); ++i) {
                    total +=
                        h.weights[i] * exp_killed_survival_integral(h.rates[i], s, alpha, a, p);
                }
                return total;
            },
            [&](DeterministicService const& d) {
                return std::exp(-alpha * d.value) * poisson_factor(a * d.value, p) * d.value *
                       truncated_gamma_integral(p, s * d.value);
            },
            [&](ParetoService const&) -> Complex { return 0.0; },
        },
        family_);
}

Complex truncated_gamma_integral(int p, Complex x)
{
    if (std::abs(x) <= p + 1.0) {
        // exp(-x) * sum_n x^n / ((p+1)(p+2)...(p+1+n)); terms shrink for |x| <= p+1.
        Complex term = 1.0 / (p + 1.0);
        Complex sum = term;
        for (int n = 1; n < 10000; ++n) {
            term *= x / static_cast<double>(p + 1 + n);
            sum += term;
            if (std::abs(term) <= 1e-17 * std::abs(sum)) {
                break;
            }
        }
        return std::exp(-x) * sum;
    }
    // Forward recurrence I_j = (j I_{j-1} - e^{-x}) / x is stable for |x| > j.
    Complex const ex = std::exp(-x);
    Complex value = (1.0 - ex) / x;
    for (int j = 1; j <= p; ++j) {
        value = (static_cast<double>(j) * value - ex) / x;
    }
    return value;
}

}  // namespace fcpool
