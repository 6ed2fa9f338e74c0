#pragma once

#include <functional>
#include <vector>

#include "fcpool/model.hpp"
#include "fcpool/types.hpp"

namespace fcpool {

enum class InversionMethod { euler, talbot };

struct InversionConfig {
    InversionMethod method = InversionMethod::euler;
    /// Euler: terms of the alternating series before averaging.
    /// Talbot: contour nodes.
    int nodes = 32;
    /// Target decimal digits; sets the Euler damping A = digits * ln 10.
    double digits = 11.0;
    /// Also run the other method and throw ConvergenceWarning on disagreement.
    bool cross_check = false;
    double cross_check_tolerance = 1e-6;

    void validate() const;
};

/// gamma -> E at an Exp(gamma) horizon of some time function f, i.e.
/// gamma * (Laplace transform of f)(gamma).
using HorizonTransform = std::function<Complex(Complex)>;
using VectorHorizonTransform = std::function<std::vector<Complex>(Complex)>;

/// f(t) from its Exp(gamma)-horizon transform.
double invert(HorizonTransform const& horizon, double t, InversionConfig const& config = {});

/// Component-wise inversion; the transform is evaluated once per node.
std::vector<double> invert_vector(VectorHorizonTransform const& horizon, std::size_t size,
                                  double t, InversionConfig const& config = {});

/// P(Z(t) = l) for l = 0..k+m.
std::vector<double> pmf_at_time(Model const& model, double t, InversionConfig const& config = {});
/// E z^{Z(t)}.
double pgf_at_time(Model const& model, double z, double t, InversionConfig const& config = {});
/// E exp(-alpha W(t)).
double workload_lst_at_time(Model const& model, double alpha, double t,
                            InversionConfig const& config = {});

}  // namespace fcpool
