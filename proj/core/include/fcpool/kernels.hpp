#pragma once

#include <vector>

#include "fcpool/exp_poly.hpp"
#include "fcpool/rate_plan.hpp"
#include "fcpool/service_law.hpp"
#include "fcpool/types.hpp"

namespace fcpool {

/// Triangular kernel arrays at killing rate gamma, indexed 0 <= i <= n <= m.
///
///   u(n,i): i arrivals during one service time, jointly with T > B
///   v(n,i): i arrivals before T, jointly with T <= B
///   w(n,i): i arrivals during one service time (gamma-free)
///
/// The last entry of each row is the complement of the others, so the row
/// sums are beta(gamma), 1 - beta(gamma) and 1 by construction. gamma may be
/// complex; the tables are then analytic continuations.
class KernelTables {
public:
    Complex gamma() const noexcept { return gamma_; }
    int pool_size() const noexcept { return plan_.pool_size(); }
    RatePlan const& plan() const noexcept { return plan_; }
    ServiceLaw const& law() const noexcept { return law_; }
    /// beta(gamma) = u(0, 0).
    Complex lst_at_gamma() const noexcept { return u_[0]; }

    Complex u(int n, int i) const { return u_[index(n, i)]; }
    Complex v(int n, int i) const { return v_[index(n, i)]; }
    double w(int n, int i) const { return w_[index(n, i)]; }

    /// v_{n,i}(alpha) = E[exp(-alpha (B - T)) 1{i arrivals before T, T <= B}].
    Complex v_alpha(int n, int i, Complex alpha) const;
    /// v_{n,0}(alpha) .. v_{n,n}(alpha) in one pass.
    std::vector<Complex> v_alpha_row(int n, Complex alpha) const;

    /// h_{n,i} for i < n (the i == n entries are complements).
    ExpPolyMixture const& mixture(int n, int i) const;

private:
    friend KernelTables build_tables(RatePlan const&, ServiceLaw const&, Complex);

    KernelTables(RatePlan plan, ServiceLaw law, Complex gamma)
        : plan_(std::move(plan)), law_(std::move(law)), gamma_(gamma)
    {
    }

    std::size_t index(int n, int i) const;
    Complex v_alpha_direct(int n, int i, Complex alpha) const;

    RatePlan plan_;
    ServiceLaw law_;
    Complex gamma_;
    std::vector<Complex> u_;
    std::vector<Complex> v_;
    std::vector<double> w_;
    std::vector<ExpPolyMixture> mixtures_;
};

/// Build u, v, w for the given plan, law and killing rate.
KernelTables build_tables(RatePlan const& plan, ServiceLaw const& law, Complex gamma);

inline KernelTables build_tables(RatePlan const& plan, ServiceLaw const& law, double gamma)
{
    return build_tables(plan, law, Complex(gamma, 0.0));
}

}  // namespace fcpool
