#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fcpool/rng.hpp"
#include "fcpool/types.hpp"

namespace fcpool {

struct ExponentialService {
    double rate;
};

struct ErlangService {
    int shape;
    double rate;
};

struct HyperExponentialService {
    std::vector<double> weights;
    std::vector<double> rates;
};

struct DeterministicService {
    double value;
};

/// P(B > t) = (t / scale)^(-index) for t >= scale. Simulation only.
struct ParetoService {
    double index;
    double scale;
};

/// Service-time law B.
///
/// Transform-side functionals are exact closed forms per family and accept
/// complex arguments; nothing is differentiated numerically. The public LST
/// operations check Re s >= 0. The kernel functionals (weighted_lst,
/// killed_survival_integral) are the analytic continuations and perform no
/// domain check, because Laplace inversion contours leave the right half-plane.
class ServiceLaw {
public:
    using Family = std::variant<ExponentialService, ErlangService, HyperExponentialService,
                                DeterministicService, ParetoService>;

    static ServiceLaw exponential(double rate);
    static ServiceLaw erlang(int shape, double rate);
    static ServiceLaw hyperexponential(std::vector<double> weights, std::vector<double> rates);
    static ServiceLaw deterministic(double value);
    static ServiceLaw pareto(double index, double scale);

    Family const& family() const noexcept { return family_; }
    bool transform_capable() const noexcept;
    bool is_exponential() const noexcept;
    /// Short textual form, e.g. "exp:1" or "erlang:2:2".
    std::string describe() const;

    /// beta(s) = E exp(-s B).
    Complex lst(Complex s) const;
    /// j-th derivative of beta at s, Re s > 0.
    Complex lst_derivative(int order, Complex s) const;
    /// j-th derivative of sigma(s) = (1 - beta(s)) / s, Re s > 0.
    Complex survival_transform_derivative(int order, Complex s) const;
    /// Psi(alpha, t) = E[exp(-alpha B) 1{B >= t}].
    Complex killed_survival(Complex alpha, double t) const;

    double tail(double t) const;
    double mean() const;
    double sample(RandomStream& rng) const;

    /// E[exp(-s B) (a B)^p / p!].
    Complex weighted_lst(Complex s, double a, int p) const;
    /// Integral over t >= 0 of exp(-s t) (a t)^p / p! Psi(alpha, t).
    /// At alpha = 0 this is the weighted survival transform.
    Complex killed_survival_integral(Complex s, Complex alpha, double a, int p) const;

private:
    explicit ServiceLaw(Family family) : family_(std::move(family)) {}
    void require_transform(char const* op) const;

    Family family_;
};

/// Integral of u^p exp(-x u) over [0, 1], stable for all complex x.
Complex truncated_gamma_integral(int p, Complex x);

}  // namespace fcpool
