#include "fcpool/rate_plan.hpp"

#include <charconv>
#include <cmath>

#include "fcpool/errors.hpp"
#include "fcpool/numeric.hpp"

namespace fcpool {

RatePlan::RatePlan(Kind kind, double lambda, std::vector<double> rates)
    : kind_(kind), lambda_(lambda), m_(static_cast<int>(rates.size())), rates_(std::move(rates))
{
}

RatePlan RatePlan::constant(double lambda, int m)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda) || m < 0) {
        throw ParameterError("constant plan needs lambda > 0 and m >= 0");
    }
    return RatePlan(Kind::constant, lambda, std::vector<double>(m, lambda));
}

RatePlan RatePlan::proportional(double lambda, int m)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda) || m < 0) {
        throw ParameterError("proportional plan needs lambda > 0 and m >= 0");
    }
    std::vector<double> rates(m);
    for (int i = 0; i < m; ++i) {
        rates[i] = (i + 1) * lambda;
    }
    return RatePlan(Kind::proportional, lambda, std::move(rates));
}

RatePlan RatePlan::general(std::vector<double> rates)
{
    for (double const r : rates) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw ParameterError("general plan rates must be positive and finite");
        }
    }
    for (std::size_t i = 0; i < rates.size(); ++i) {
        for (std::size_t j = i + 1; j < rates.size(); ++j) {
            if (!rates_distinct(rates[i], rates[j])) {
                throw ParameterError(
                    "general plan rates must be pairwise distinct (relative gap >= 1e-8); "
                    "use the constant or proportional plan for repeated rates");
            }
        }
    }
    return RatePlan(Kind::general, 0.0, std::move(rates));
}

double RatePlan::rate(int n) const
{
    if (n < 1 || n > m_) {
        throw IndexError("rate index " + std::to_string(n) + " outside 1.." + std::to_string(m_));
    }
    return rates_[n - 1];
}

std::string RatePlan::describe() const
{
    auto num = [](double x) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof(buf), x);
        return std::string(buf, res.ptr);
    };
    switch (kind_) {
    case Kind::constant:
        return "constant:" + num(lambda_);
    case Kind::proportional:
        return "proportional:" + num(lambda_);
    case Kind::general: {
        std::string out = "general:";
        for (std::size_t i = 0; i < rates_.size(); ++i) {
            out += (i ? "," : "") + num(rates_[i]);
        }
        return out;
    }
    }
    return {};
}

}  // namespace fcpool
