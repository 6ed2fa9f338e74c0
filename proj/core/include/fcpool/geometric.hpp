#pragma once

#include "fcpool/model.hpp"
#include "fcpool/types.hpp"

namespace fcpool {

/// Closed-form double generating function
///   G(p, r, z) = sum_{l,n >= 0} p^l r^n mu_{l,n}(z)
/// for exponential service and a constant arrival rate.
struct GeometricPoolParams {
    double lambda;
    double mu;
    double gamma;

    GeometricPoolParams(double arrival_rate, double service_rate, double killing_rate);
    /// Takes lambda from a constant plan and mu from exponential service.
    static GeometricPoolParams from_model(RatePlan const& plan, ServiceLaw const& law,
                                          double gamma);

    double xi() const noexcept { return lambda + mu + gamma; }
};

/// Zeros of mu p^2 - xi p + lambda r: the small one in [0, 1) and the large one.
struct KernelRoots {
    double small;
    double large;
};

struct GeometricHelpers {
    Complex h1;
    Complex h2;
    Complex f;
    Complex j;
};

KernelRoots roots(GeometricPoolParams const& params, double r);
GeometricHelpers helpers(GeometricPoolParams const& params, double r, double z);
double m0(GeometricPoolParams const& params, double r, double z);
double g(GeometricPoolParams const& params, double p, double r, double z);

/// (1 - p)(1 - r) G(p, r, z): the PGF of Z(T) for independent geometric k, m.
double mixed_pgf(GeometricPoolParams const& params, double p, double r, double z);

}  // namespace fcpool
