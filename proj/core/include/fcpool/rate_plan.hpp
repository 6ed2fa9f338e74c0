#pragma once

#include <string>
#include <vector>

namespace fcpool {

/// Interarrival-rate sequence lambda_1..lambda_m.
///
/// With n customers still to arrive, the time to the next arrival is
/// Exp(rate(n)); the first arrival after time 0 therefore has rate rate(m).
class RatePlan {
public:
    enum class Kind { constant, proportional, general };

    /// lambda_i = lambda (Poisson stream stopped after m arrivals).
    static RatePlan constant(double lambda, int m);
    /// lambda_i = i * lambda (i.i.d. Exp(lambda) arrival epochs).
    static RatePlan proportional(double lambda, int m);
    /// Explicit rates, index 0 holding lambda_1; pairwise distinct.
    static RatePlan general(std::vector<double> rates);

    Kind kind() const noexcept { return kind_; }
    int pool_size() const noexcept { return m_; }
    /// Base rate for constant and proportional plans.
    double base_rate() const noexcept { return lambda_; }
    /// lambda_n for n in 1..m.
    double rate(int n) const;
    std::vector<double> const& rates() const noexcept { return rates_; }
    std::string describe() const;

private:
    RatePlan(Kind kind, double lambda, std::vector<double> rates);

    Kind kind_;
    double lambda_;
    int m_;
    std::vector<double> rates_;
};

}  // namespace fcpool
