#pragma once

#include <algorithm>
#include <cmath>

#include "fcpool/types.hpp"

namespace fcpool {

/// Relative gap used to decide that two rates are distinct.
inline constexpr double kRateGap = 1e-8;

inline bool rates_distinct(double a, double b) noexcept
{
    return std::abs(a - b) >= kRateGap * std::max(std::abs(a), std::abs(b));
}

inline bool rates_distinct(Complex a, Complex b) noexcept
{
    return std::abs(a - b) >= kRateGap * std::max(std::abs(a), std::abs(b));
}

/// x^n by repeated squaring; x^0 == 1 for every x.
template <class T>
T ipow(T x, int n) noexcept
{
    T result(1.0);
    while (n > 0) {
        if (n & 1) {
            result *= x;
        }
        x *= x;
        n >>= 1;
    }
    return result;
}

inline double factorial(int n) noexcept
{
    double out = 1.0;
    for (int i = 2; i <= n; ++i) {
        out *= i;
    }
    return out;
}

inline double binomial(int n, int k) noexcept
{
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double out = 1.0;
    for (int i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
    }
    return out;
}

/// x^p / p! for x >= 0 without intermediate overflow.
inline double poisson_factor(double x, int p) noexcept
{
    if (p == 0) {
        return 1.0;
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (p <= 30) {
        double out = 1.0;
        for (int i = 1; i <= p; ++i) {
            out *= x / i;
        }
        return out;
    }
    return std::exp(p * std::log(x) - std::lgamma(p + 1.0));
}

}  // namespace fcpool
