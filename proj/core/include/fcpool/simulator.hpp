#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fcpool/model.hpp"

namespace fcpool {

struct Estimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

struct SimConfig {
    Model model;
    /// Killing rate of the Exp(gamma) horizon T; T-targets are skipped without it.
    std::optional<double> gamma;
    /// Fixed observation times for P(Z(t) = l).
    std::vector<double> times;
    /// z values for E z^{Z(T)}.
    std::vector<double> z_grid;
    /// alpha values for E exp(-alpha W(T)).
    std::vector<double> alpha_grid;
    /// Thresholds t for P(W_j > t).
    std::vector<double> tail_points;
    std::int64_t replications = 100000;
    std::uint64_t seed = 1;
    /// Worker threads; 0 picks the hardware concurrency. Results do not
    /// depend on this value.
    int threads = 0;

    explicit SimConfig(Model m) : model(std::move(m)) {}
    void validate() const;
};

struct SimReport {
    std::int64_t replications = 0;
    /// P(Z(T) = l), l = 0..k+m (empty without gamma).
    std::vector<Estimate> pmf_at_horizon;
    /// E z^{Z(T)} per z_grid entry.
    std::vector<Estimate> pgf_at_horizon;
    /// E exp(-alpha W(T)) per alpha_grid entry.
    std::vector<Estimate> workload_lst_at_horizon;
    /// [time index][l] = P(Z(t) = l).
    std::vector<std::vector<Estimate>> pmf_at_times;
    /// E W_j, j = 1..k+m (index j-1).
    std::vector<Estimate> waiting_mean;
    /// [j-1][tail index] = P(W_j > t).
    std::vector<std::vector<Estimate>> waiting_tail;
};

SimReport simulate(SimConfig const& config);

/// Frequencies, over replications, of the kernel events while n customers
/// remain to arrive: i arrivals during B jointly with T > B (u), i arrivals
/// before T jointly with T <= B (v), and i arrivals during B (w).
struct KernelEventReport {
    std::vector<Estimate> u;
    std::vector<Estimate> v;
    std::vector<Estimate> w;
};

KernelEventReport simulate_kernel_events(RatePlan const& plan, ServiceLaw const& law,
                                         double gamma, int n, std::int64_t replications,
                                         std::uint64_t seed, int threads = 0);

/// P(i arrivals in [0, t]) with n customers still to arrive, i = 0..n.
std::vector<Estimate> simulate_arrival_counts(RatePlan const& plan, int n, double t,
                                              std::int64_t replications, std::uint64_t seed,
                                              int threads = 0);

}  // namespace fcpool
