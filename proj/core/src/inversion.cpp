#include "fcpool/inversion.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fcpool/errors.hpp"
#include "fcpool/numeric.hpp"
#include "fcpool/transient.hpp"

namespace fcpool {

namespace {

constexpr int kEulerAveraging = 12;

// Both schemes reduce to a weighted sum of Re F(s_j) with F(s) = horizon(s) / s.
struct Node {
    Complex s;
    Complex weight;
};

std::vector<Node> euler_nodes(double t, InversionConfig const& config)
{
    // Abate-Whitt: trapezoidal Bromwich sum, then binomial (Euler) averaging
    // of the partial sums s_n .. s_{n+12}.
    double const a = config.digits * std::numbers::ln10;
    int const n = config.nodes;
    int const total = n + kEulerAveraging;
    double const scale = std::exp(a / 2.0) / t;

    // Weight of term k in the averaged partial sums.
    std::vector<double> tail_weight(static_cast<std::size_t>(total) + 1, 0.0);
    double const norm = std::ldexp(1.0, -kEulerAveraging);
    for (int j = 0; j <= kEulerAveraging; ++j) {
        double const w = binomial(kEulerAveraging, j) * norm;
        for (int kk = 0; kk <= n + j; ++kk) {
            tail_weight[kk] += w;
        }
    }
    std::vector<Node> nodes;
    nodes.reserve(static_cast<std::size_t>(total) + 1);
    for (int kk = 0; kk <= total; ++kk) {
        Complex const s((a / 2.0) / t, kk * std::numbers::pi / t);
        double const sign = (kk % 2 == 0) ? 1.0 : -1.0;
        double const first = (kk == 0) ? 0.5 : 1.0;
        nodes.push_back({s, Complex(scale * sign * first * tail_weight[kk], 0.0)});
    }
    return nodes;
}

std::vector<Node> talbot_nodes(double t, InversionConfig const& config)
{
    // Fixed Talbot (Abate-Valko): s(theta) = r theta (cot theta + i).
    int const m = config.nodes;
    double const r = 2.0 * m / (5.0 * t);
    std::vector<Node> nodes;
    nodes.reserve(static_cast<std::size_t>(m));
    nodes.push_back({Complex(r, 0.0), Complex(0.5 * std::exp(r * t) * r / m, 0.0)});
    for (int kk = 1; kk < m; ++kk) {
        double const theta = kk * std::numbers::pi / m;
        double const cot = std::cos(theta) / std::sin(theta);
        Complex const s = r * theta * Complex(cot, 1.0);
        double const sigma = theta + (theta * cot - 1.0) * cot;
        Complex const weight = (r / m) * std::exp(t * s) * Complex(1.0, sigma);
        nodes.push_back({s, weight});
    }
    return nodes;
}

std::vector<Node> make_nodes(double t, InversionConfig const& config)
{
    return config.method == InversionMethod::euler ? euler_nodes(t, config)
                                                   : talbot_nodes(t, config);
}

std::vector<double> combine(VectorHorizonTransform const& horizon, std::size_t size, double t,
                            InversionConfig const& config)
{
    std::vector<double> out(size, 0.0);
    for (Node const& node : make_nodes(t, config)) {
        std::vector<Complex> const values = horizon(node.s);
        if (values.size() != size) {
            throw ParameterError("transform returned " + std::to_string(values.size()) +
                                 " components, expected " + std::to_string(size));
        }
        for (std::size_t c = 0; c < size; ++c) {
            out[c] += (node.weight * (values[c] / node.s)).real();
        }
    }
    return out;
}

}  // namespace

void InversionConfig::validate() const
{
    if (nodes < 8 || nodes % 2 != 0) {
        throw ParameterError("inversion node count must be even and at least 8");
    }
    if (!(digits > 0.0 && digits <= 15.0)) {
        throw ParameterError("inversion digits must lie in (0, 15]");
    }
}

std::vector<double> invert_vector(VectorHorizonTransform const& horizon, std::size_t size,
                                  double t, InversionConfig const& config)
{
    config.validate();
    if (!(t > 0.0)) {
        throw DomainError("inversion needs t > 0");
    }
    std::vector<double> out = combine(horizon, size, t, config);
    if (config.cross_check) {
        InversionConfig other = config;
        other.method = config.method == InversionMethod::euler ? InversionMethod::talbot
                                                               : InversionMethod::euler;
        std::vector<double> const check = combine(horizon, size, t, other);
        for (std::size_t c = 0; c < size; ++c) {
            double const gap = std::abs(out[c] - check[c]);
            if (!(gap <= config.cross_check_tolerance)) {
                throw ConvergenceWarning("Euler and Talbot inversions differ by " +
                                         std::to_string(gap) + " at t = " + std::to_string(t));
            }
        }
    }
    return out;
}

double invert(HorizonTransform const& horizon, double t, InversionConfig const& config)
{
    return invert_vector([&](Complex s) { return std::vector<Complex>{horizon(s)}; }, 1, t,
                         config)[0];
}

std::vector<double> pmf_at_time(Model const& model, double t, InversionConfig const& config)
{
    std::size_t const size = static_cast<std::size_t>(model.customers()) + 1;
    if (t == 0.0) {
        std::vector<double> out(size, 0.0);
        out[static_cast<std::size_t>(model.k)] = 1.0;
        return out;
    }
    std::vector<double> probs = invert_vector(
        [&](Complex gamma) {
            return pgf_coefficients(model.k, build_tables(model.plan, model.law, gamma));
        },
        size, t, config);
    double total = 0.0;
    for (double const p : probs) {
        total += p;
    }
    if (!(std::abs(total - 1.0) < 1e-6)) {
        throw NormalizationError("inverted probabilities sum to " + std::to_string(total));
    }
    for (double& p : probs) {
        p /= total;
    }
    return probs;
}

double pgf_at_time(Model const& model, double z, double t, InversionConfig const& config)
{
    if (t == 0.0) {
        return std::pow(z, model.k);
    }
    return invert(
        [&](Complex gamma) {
            return pgf_value(model.k, build_tables(model.plan, model.law, gamma), z);
        },
        t, config);
}

double workload_lst_at_time(Model const& model, double alpha, double t,
                            InversionConfig const& config)
{
    if (t == 0.0) {
        return std::pow(model.law.lst(alpha).real(), model.k);
    }
    return invert(
        [&](Complex gamma) {
            return workload_lst(model.k, build_tables(model.plan, model.law, gamma), alpha);
        },
        t, config);
}

}  // namespace fcpool
