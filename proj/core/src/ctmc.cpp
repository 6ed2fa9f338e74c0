#include "fcpool/ctmc.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <string>

#include "fcpool/errors.hpp"

namespace fcpool {

namespace {

constexpr int kMaxStates = 10000;
// Largest Lambda * dt per uniformization slice; keeps e^{-Lambda dt} well
// above underflow.
constexpr double kSliceMass = 30.0;
constexpr double kTailMass = 1e-15;

struct Transition {
    int from;
    int to;
    double rate;
};

double service_rate(Model const& model)
{
    if (!model.law.is_exponential()) {
        throw UnsupportedOracle("the CTMC oracle needs exponential service, got " +
                                model.law.describe());
    }
    return std::get<ExponentialService>(model.law.family()).rate;
}

int state_count(Model const& model)
{
    long const states = static_cast<long>(model.customers() + 1) * (model.m() + 1);
    if (states > kMaxStates) {
        throw ParameterError("CTMC state space has " + std::to_string(states) +
                             " states; the oracle is limited to " + std::to_string(kMaxStates));
    }
    return static_cast<int>(states);
}

std::vector<Transition> transitions(Model const& model)
{
    double const mu = service_rate(model);
    int const top = model.customers();
    int const m = model.m();
    std::vector<Transition> out;
    for (int l = 0; l <= top; ++l) {
        for (int n = 0; n <= m; ++n) {
            int const s = l * (m + 1) + n;
            if (n > 0 && l < top) {
                out.push_back({s, (l + 1) * (m + 1) + (n - 1), model.plan.rate(n)});
            }
            if (l > 0) {
                out.push_back({s, (l - 1) * (m + 1) + n, mu});
            }
        }
    }
    return out;
}

CtmcDistribution start(Model const& model)
{
    CtmcDistribution d;
    d.k = model.k;
    d.m = model.m();
    d.probs.assign(static_cast<std::size_t>(state_count(model)), 0.0);
    d.probs[static_cast<std::size_t>(model.k * (d.m + 1) + d.m)] = 1.0;
    return d;
}

}  // namespace

double CtmcDistribution::at(int l, int n) const
{
    if (l < 0 || l > k + m || n < 0 || n > m) {
        throw IndexError("CTMC state (" + std::to_string(l) + ", " + std::to_string(n) +
                         ") out of range");
    }
    return probs[static_cast<std::size_t>(l * (m + 1) + n)];
}

double CtmcDistribution::total() const
{
    double s = 0.0;
    for (double const p : probs) {
        s += p;
    }
    return s;
}

std::vector<double> CtmcDistribution::queue_marginal() const
{
    std::vector<double> out(static_cast<std::size_t>(k + m + 1), 0.0);
    for (int l = 0; l <= k + m; ++l) {
        for (int n = 0; n <= m; ++n) {
            out[static_cast<std::size_t>(l)] += probs[static_cast<std::size_t>(l * (m + 1) + n)];
        }
    }
    return out;
}

int ctmc_state_count(Model const& model)
{
    service_rate(model);
    return state_count(model);
}

std::vector<double> ctmc_generator(Model const& model)
{
    int const states = ctmc_state_count(model);
    std::vector<double> q(static_cast<std::size_t>(states) * states, 0.0);
    for (Transition const& tr : transitions(model)) {
        q[static_cast<std::size_t>(tr.from) * states + tr.to] += tr.rate;
        q[static_cast<std::size_t>(tr.from) * states + tr.from] -= tr.rate;
    }
    return q;
}

CtmcDistribution ctmc_resolvent(Model const& model, double gamma)
{
    if (!(gamma > 0.0)) {
        throw ParameterError("resolvent needs gamma > 0");
    }
    CtmcDistribution d = start(model);
    int const states = static_cast<int>(d.probs.size());

    // pi (gamma I - Q) = gamma e_init, solved as (gamma I - Q)^T pi^T = gamma e_init.
    std::vector<Eigen::Triplet<double>> entries;
    std::vector<double> exit(static_cast<std::size_t>(states), 0.0);
    for (Transition const& tr : transitions(model)) {
        entries.emplace_back(tr.to, tr.from, -tr.rate);
        exit[static_cast<std::size_t>(tr.from)] += tr.rate;
    }
    for (int s = 0; s < states; ++s) {
        entries.emplace_back(s, s, gamma + exit[static_cast<std::size_t>(s)]);
    }
    Eigen::SparseMatrix<double> a(states, states);
    a.setFromTriplets(entries.begin(), entries.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
    solver.compute(a);
    if (solver.info() != Eigen::Success) {
        throw ConditioningError("CTMC resolvent factorization failed");
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(states);
    for (int s = 0; s < states; ++s) {
        rhs[s] = gamma * d.probs[static_cast<std::size_t>(s)];
    }
    Eigen::VectorXd const pi = solver.solve(rhs);
    for (int s = 0; s < states; ++s) {
        d.probs[static_cast<std::size_t>(s)] = pi[s];
    }
    return d;
}

CtmcDistribution ctmc_at_time(Model const& model, double t)
{
    if (!(t >= 0.0)) {
        throw ParameterError("ctmc_at_time needs t >= 0");
    }
    CtmcDistribution d = start(model);
    if (t == 0.0) {
        return d;
    }
    int const states = static_cast<int>(d.probs.size());
    std::vector<Transition> const trs = transitions(model);
    std::vector<double> exit(static_cast<std::size_t>(states), 0.0);
    for (Transition const& tr : trs) {
        exit[static_cast<std::size_t>(tr.from)] += tr.rate;
    }
    double lambda = 0.0;
    for (double const e : exit) {
        lambda = std::max(lambda, e);
    }
    if (lambda == 0.0) {
        return d;
    }

    // One step of the uniformized DTMC P = I + Q / Lambda.
    auto step = [&](std::vector<double> const& x) {
        std::vector<double> y(x.size());
        for (int s = 0; s < states; ++s) {
            y[static_cast<std::size_t>(s)] =
                x[static_cast<std::size_t>(s)] * (1.0 - exit[static_cast<std::size_t>(s)] / lambda);
        }
        for (Transition const& tr : trs) {
            y[static_cast<std::size_t>(tr.to)] += x[static_cast<std::size_t>(tr.from)] * tr.rate / lambda;
        }
        return y;
    };

    int const slices = static_cast<int>(std::ceil(lambda * t / kSliceMass));
    double const dt = t / slices;
    double const mass = lambda * dt;
    for (int slice = 0; slice < slices; ++slice) {
        std::vector<double> term = d.probs;
        std::vector<double> out(term.size(), 0.0);
        double weight = std::exp(-mass);
        double accumulated = 0.0;
        for (int j = 0;; ++j) {
            for (std::size_t s = 0; s < out.size(); ++s) {
                out[s] += weight * term[s];
            }
            accumulated += weight;
            if ((j > mass + 1 && (1.0 - accumulated < kTailMass || weight < 1e-18)) || j > 1000) {
                break;
            }
            term = step(term);
            weight *= mass / (j + 1);
        }
        d.probs = std::move(out);
    }
    return d;
}

}  // namespace fcpool
