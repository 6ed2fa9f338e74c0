#pragma once

#include "fcpool/errors.hpp"
#include "fcpool/rate_plan.hpp"
#include "fcpool/service_law.hpp"

namespace fcpool {

/// k customers waiting at time 0 plus a pool of m = plan.pool_size() arrivals.
struct Model {
    int k = 0;
    RatePlan plan;
    ServiceLaw law;

    Model(int initial, RatePlan rate_plan, ServiceLaw service)
        : k(initial), plan(std::move(rate_plan)), law(std::move(service))
    {
        if (k < 0) {
            throw ParameterError("initial customer count k must be non-negative");
        }
    }

    int m() const noexcept { return plan.pool_size(); }
    int customers() const noexcept { return k + m(); }
};

}  // namespace fcpool
