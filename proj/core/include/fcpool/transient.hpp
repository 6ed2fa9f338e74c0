#pragma once

#include <vector>

#include "fcpool/kernels.hpp"
#include "fcpool/model.hpp"
#include "fcpool/types.hpp"

namespace fcpool {

/// mu_{k,m}(z) = E_{k,m} z^{Z(T)} in coefficient form: coeffs[l] = P(Z(T) = l).
struct PgfPolynomial {
    std::vector<double> coeffs;

    double evaluate(double z) const;
    double total() const;
    int degree_bound() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

/// mu_{k,m}(z, alpha) = E[z^{Z(T)} exp(-alpha W(T))] as a z-polynomial.
struct JointTransformValue {
    Complex alpha;
    std::vector<Complex> coeffs;

    Complex evaluate(Complex z) const;
};

/// Coefficients of mu_{k,m}(z) from prebuilt tables (complex gamma allowed).
std::vector<Complex> pgf_coefficients(int k, KernelTables const& tables);

/// Joint queue-length/workload coefficients at one alpha.
std::vector<Complex> joint_coefficients(int k, KernelTables const& tables, Complex alpha);

/// mu_{k,m}(z) at a single point: the recursion run on scalars. Cost is
/// O(k m^2 + m^3) operations given the tables.
Complex pgf_value(int k, KernelTables const& tables, Complex z);

/// Every intermediate value of the scalar recursion: grid[n][l] = mu_{l,n}(z)
/// for 0 <= n <= m and 0 <= l <= k + m - n.
std::vector<std::vector<Complex>> pgf_value_grid(int k, KernelTables const& tables, Complex z);

PgfPolynomial pgf(Model const& model, double gamma);
JointTransformValue joint_transform(Model const& model, Complex gamma, Complex alpha);

/// E exp(-alpha W(T)).
Complex workload_lst(Model const& model, Complex gamma, Complex alpha);
Complex workload_lst(int k, KernelTables const& tables, Complex alpha);

std::vector<double> pmf(Model const& model, double gamma);

/// E[Z(T)(Z(T)-1)...(Z(T)-r+1)] for r = 0..max_order (entry 0 is 1).
std::vector<double> factorial_moments(Model const& model, double gamma, int max_order);
std::vector<double> factorial_moments_from_pmf(std::vector<double> const& probs, int max_order);

}  // namespace fcpool
