#pragma once

#include <vector>

#include "fcpool/kernels.hpp"
#include "fcpool/model.hpp"
#include "fcpool/types.hpp"

namespace fcpool {

/// Distribution of (customers present, customers still to arrive) right after
/// the step-th departure. probs is indexed [l * (m + 1) + n].
struct DepartureChainState {
    int k = 0;
    int m = 0;
    int step = 0;
    std::vector<double> probs;

    static DepartureChainState initial(int k, int m);

    int max_present() const noexcept { return k + m; }
    double at(int l, int n) const;
    double total() const;
    /// P(no customer present) at this step.
    double empty_probability() const;
};

/// One departure of the chain, using the gamma-free kernel w.
DepartureChainState chain_step(DepartureChainState const& state, KernelTables const& tables);
DepartureChainState chain_step(DepartureChainState const& state, RatePlan const& plan,
                               ServiceLaw const& law);

/// rho_h = P(customer h finds the system empty), h = k+1..k+m (index h-k-1).
std::vector<double> emptiness_probs(Model const& model);

/// FIFO waiting times of all k + m customers. Precomputes rho once.
class WaitingTimes {
public:
    explicit WaitingTimes(Model model);

    Model const& model() const noexcept { return model_; }
    std::vector<double> const& emptiness() const noexcept { return rho_; }

    /// E exp(-alpha W_j), 1 <= j <= k + m.
    Complex lst(int j, Complex alpha) const;
    /// E W_j.
    double mean(int j) const;

private:
    Complex lst_closed_form(int j, Complex alpha) const;
    void check_customer(int j) const;

    Model model_;
    std::vector<double> rho_;
};

Complex waiting_lst(int j, Complex alpha, Model const& model);
double waiting_mean(int j, Model const& model);

/// (j - 1) P(B > t): the heavy-tail equivalent of P(W_j > t) for Pareto
/// service with index in (1, 2).
double tail_asymptote(int j, double t, ServiceLaw const& law);

}  // namespace fcpool
