#pragma once

#include <vector>

#include "fcpool/rate_plan.hpp"

namespace fcpool {

/// One term coef * exp(-rate t) (rate t)^power / power!.
///
/// For power == 0 this is coef * exp(-rate t). Terms with power > 0 always
/// have rate > 0; the normalized power keeps large pools free of factorial
/// overflow.
struct ExpPolyTerm {
    double coef;
    int power;
    double rate;

    friend bool operator==(ExpPolyTerm const&, ExpPolyTerm const&) = default;
};

/// Finite sum of exponential-polynomial terms.
struct ExpPolyMixture {
    std::vector<ExpPolyTerm> terms;

    double evaluate(double t) const;
    double max_abs_coef() const;
};

/// Coefficient magnitude beyond which partial fractions are refused.
inline constexpr double kMaxMixtureCoef = 1e12;

/// h_{n,i}(t): probability of exactly i arrivals in [0, t] when n customers
/// are still to arrive (for i == n: all n have arrived by t).
ExpPolyMixture arrival_count_mixture(RatePlan const& plan, int n, int i);

}  // namespace fcpool
