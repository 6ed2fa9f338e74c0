#pragma once

#include <vector>

#include "fcpool/model.hpp"

namespace fcpool {

/// Distribution over (customers present l, customers yet to arrive n) for
/// exponential service, where the model is a finite CTMC. probs is indexed
/// [l * (m + 1) + n], 0 <= l <= k + m, 0 <= n <= m.
struct CtmcDistribution {
    int k = 0;
    int m = 0;
    std::vector<double> probs;

    double at(int l, int n) const;
    double total() const;
    /// P(Z = l) for l = 0..k+m.
    std::vector<double> queue_marginal() const;
};

/// Dense generator Q (row-major, size states x states) of the CTMC.
/// Unreachable states are kept, so rows still sum to zero.
std::vector<double> ctmc_generator(Model const& model);
int ctmc_state_count(Model const& model);

/// Distribution at an independent Exp(gamma) time: gamma (gamma I - Q)^{-1}
/// applied to unit mass at (k, m).
CtmcDistribution ctmc_resolvent(Model const& model, double gamma);

/// Distribution at fixed time t by uniformization.
CtmcDistribution ctmc_at_time(Model const& model, double t);

}  // namespace fcpool
