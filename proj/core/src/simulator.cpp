#include "fcpool/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <string>
#include <thread>

#include "fcpool/errors.hpp"
#include "fcpool/rng.hpp"

namespace fcpool {

namespace {

// Replications per reduction block. Fixed, so the floating-point summation
// order (and hence the result) is independent of the thread count.
constexpr std::int64_t kBlockSize = 8192;

using Replication = std::function<void(RandomStream&, double*)>;

struct Moments {
    std::vector<double> sum;
    std::vector<double> sum_sq;
};

int worker_count(int requested, std::int64_t blocks)
{
    int threads = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(threads, 1);
    return static_cast<int>(std::min<std::int64_t>(threads, blocks));
}

// Replication r always draws from stream r, and each block of kBlockSize
// replications is summed on its own before the blocks are combined in order.
std::vector<Estimate> run_replications(std::size_t channels, std::int64_t replications,
                                       std::uint64_t seed, int threads, Replication const& body)
{
    std::int64_t const blocks = (replications + kBlockSize - 1) / kBlockSize;
    std::vector<Moments> partial(static_cast<std::size_t>(blocks));
    std::atomic<std::int64_t> next{0};

    auto worker = [&]() {
        std::vector<double> values(channels);
        for (std::int64_t b = next++; b < blocks; b = next++) {
            Moments& acc = partial[static_cast<std::size_t>(b)];
            acc.sum.assign(channels, 0.0);
            acc.sum_sq.assign(channels, 0.0);
            std::int64_t const end = std::min(replications, (b + 1) * kBlockSize);
            for (std::int64_t r = b * kBlockSize; r < end; ++r) {
                RandomStream rng(seed, static_cast<std::uint64_t>(r));
                std::fill(values.begin(), values.end(), 0.0);
                body(rng, values.data());
                for (std::size_t c = 0; c < channels; ++c) {
                    acc.sum[c] += values[c];
                    acc.sum_sq[c] += values[c] * values[c];
                }
            }
        }
    };

    int const workers = worker_count(threads, blocks);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    std::vector<double> sum(channels, 0.0);
    std::vector<double> sum_sq(channels, 0.0);
    for (Moments const& acc : partial) {
        for (std::size_t c = 0; c < channels; ++c) {
            sum[c] += acc.sum[c];
            sum_sq[c] += acc.sum_sq[c];
        }
    }
    double const n = static_cast<double>(replications);
    std::vector<Estimate> out(channels);
    for (std::size_t c = 0; c < channels; ++c) {
        double const mean = sum[c] / n;
        double var = 0.0;
        if (replications > 1) {
            var = std::max(0.0, (sum_sq[c] - n * mean * mean) / (n - 1.0));
        }
        out[c] = {mean, std::sqrt(var / n)};
    }
    return out;
}

void check_replications(std::int64_t replications)
{
    if (replications < 1) {
        throw ParameterError("replication count must be at least 1");
    }
}

// Cursor over the flat channel vector.
struct Layout {
    std::size_t size = 0;
    std::size_t take(std::size_t n)
    {
        std::size_t const at = size;
        size += n;
        return at;
    }
};

}  // namespace

void SimConfig::validate() const
{
    check_replications(replications);
    if (gamma && !(*gamma > 0.0)) {
        throw ParameterError("simulation gamma must be positive");
    }
    if ((!z_grid.empty() || !alpha_grid.empty()) && !gamma) {
        throw ParameterError("z and alpha targets are taken at T and need gamma");
    }
    for (double const t : times) {
        if (!(t >= 0.0)) {
            throw ParameterError("observation times must be non-negative");
        }
    }
    for (double const a : alpha_grid) {
        if (!(a >= 0.0)) {
            throw ParameterError("workload alpha values must be non-negative");
        }
    }
}

SimReport simulate(SimConfig const& config)
{
    config.validate();
    Model const& model = config.model;
    int const k = model.k;
    int const m = model.m();
    int const total = k + m;
    std::size_t const states = static_cast<std::size_t>(total) + 1;
    bool const horizon = config.gamma.has_value();
    double const gamma = horizon ? *config.gamma : 0.0;

    Layout layout;
    std::size_t const pmf_t = layout.take(horizon ? states : 0);
    std::size_t const pgf_t = layout.take(config.z_grid.size());
    std::size_t const lst_t = layout.take(config.alpha_grid.size());
    std::size_t const pmf_times = layout.take(config.times.size() * states);
    std::size_t const wait = layout.take(static_cast<std::size_t>(total));
    std::size_t const tails = layout.take(static_cast<std::size_t>(total) * config.tail_points.size());

    std::vector<double> rates(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        rates[static_cast<std::size_t>(i)] = model.plan.rate(m - i);
    }

    auto body = [&](RandomStream& rng, double* out) {
        // Customer j (0-based) arrives at arrival[j]; initial customers at 0.
        std::vector<double> arrival(static_cast<std::size_t>(total), 0.0);
        std::vector<double> service(static_cast<std::size_t>(total));
        std::vector<double> departure(static_cast<std::size_t>(total));
        double clock = 0.0;
        for (int i = 0; i < m; ++i) {
            clock += rng.exponential(rates[static_cast<std::size_t>(i)]);
            arrival[static_cast<std::size_t>(k + i)] = clock;
        }
        for (int j = 0; j < total; ++j) {
            service[static_cast<std::size_t>(j)] = model.law.sample(rng);
        }
        double free_at = 0.0;
        for (int j = 0; j < total; ++j) {
            std::size_t const jj = static_cast<std::size_t>(j);
            double const begin = std::max(arrival[jj], free_at);
            double const waited = begin - arrival[jj];
            departure[jj] = begin + service[jj];
            free_at = departure[jj];
            out[wait + jj] = waited;
            for (std::size_t q = 0; q < config.tail_points.size(); ++q) {
                out[tails + jj * config.tail_points.size() + q] =
                    waited > config.tail_points[q] ? 1.0 : 0.0;
            }
        }
        auto observe = [&](double tau, double& work) {
            int present = 0;
            work = 0.0;
            for (int j = 0; j < total; ++j) {
                std::size_t const jj = static_cast<std::size_t>(j);
                if (arrival[jj] <= tau && tau < departure[jj]) {
                    ++present;
                    work += std::min(service[jj], departure[jj] - tau);
                }
            }
            return present;
        };
        double work = 0.0;
        for (std::size_t q = 0; q < config.times.size(); ++q) {
            int const z = observe(config.times[q], work);
            out[pmf_times + q * states + static_cast<std::size_t>(z)] = 1.0;
        }
        if (horizon) {
            double const horizon_time = rng.exponential(gamma);
            int const z = observe(horizon_time, work);
            out[pmf_t + static_cast<std::size_t>(z)] = 1.0;
            for (std::size_t q = 0; q < config.z_grid.size(); ++q) {
                out[pgf_t + q] = std::pow(config.z_grid[q], z);
            }
            for (std::size_t q = 0; q < config.alpha_grid.size(); ++q) {
                out[lst_t + q] = std::exp(-config.alpha_grid[q] * work);
            }
        }
    };

    std::vector<Estimate> const est =
        run_replications(layout.size, config.replications, config.seed, config.threads, body);

    auto slice = [&](std::size_t at, std::size_t n) {
        return std::vector<Estimate>(est.begin() + static_cast<std::ptrdiff_t>(at),
                                     est.begin() + static_cast<std::ptrdiff_t>(at + n));
    };
    SimReport report;
    report.replications = config.replications;
    if (horizon) {
        report.pmf_at_horizon = slice(pmf_t, states);
    }
    report.pgf_at_horizon = slice(pgf_t, config.z_grid.size());
    report.workload_lst_at_horizon = slice(lst_t, config.alpha_grid.size());
    for (std::size_t q = 0; q < config.times.size(); ++q) {
        report.pmf_at_times.push_back(slice(pmf_times + q * states, states));
    }
    report.waiting_mean = slice(wait, static_cast<std::size_t>(total));
    for (int j = 0; j < total; ++j) {
        report.waiting_tail.push_back(slice(
            tails + static_cast<std::size_t>(j) * config.tail_points.size(), config.tail_points.size()));
    }
    return report;
}

KernelEventReport simulate_kernel_events(RatePlan const& plan, ServiceLaw const& law,
                                         double gamma, int n, std::int64_t replications,
                                         std::uint64_t seed, int threads)
{
    check_replications(replications);
    if (n < 0 || n > plan.pool_size()) {
        throw IndexError("kernel row " + std::to_string(n) + " outside 0.." +
                         std::to_string(plan.pool_size()));
    }
    if (!(gamma > 0.0)) {
        throw ParameterError("kernel simulation needs gamma > 0");
    }
    std::size_t const row = static_cast<std::size_t>(n) + 1;
    auto body = [&](RandomStream& rng, double* out) {
        double const b = law.sample(rng);
        double const horizon = rng.exponential(gamma);
        int during_b = 0;
        int before_t = 0;
        double clock = 0.0;
        for (int left = n; left > 0; --left) {
            clock += rng.exponential(plan.rate(left));
            during_b += clock <= b ? 1 : 0;
            before_t += clock <= horizon ? 1 : 0;
        }
        if (horizon > b) {
            out[static_cast<std::size_t>(during_b)] = 1.0;
        } else {
            out[row + static_cast<std::size_t>(before_t)] = 1.0;
        }
        out[2 * row + static_cast<std::size_t>(during_b)] = 1.0;
    };
    std::vector<Estimate> const est = run_replications(3 * row, replications, seed, threads, body);
    KernelEventReport report;
    report.u.assign(est.begin(), est.begin() + static_cast<std::ptrdiff_t>(row));
    report.v.assign(est.begin() + static_cast<std::ptrdiff_t>(row),
                    est.begin() + static_cast<std::ptrdiff_t>(2 * row));
    report.w.assign(est.begin() + static_cast<std::ptrdiff_t>(2 * row), est.end());
    return report;
}

std::vector<Estimate> simulate_arrival_counts(RatePlan const& plan, int n, double t,
                                              std::int64_t replications, std::uint64_t seed,
                                              int threads)
{
    check_replications(replications);
    if (n < 0 || n > plan.pool_size()) {
        throw IndexError("arrival row " + std::to_string(n) + " outside 0.." +
                         std::to_string(plan.pool_size()));
    }
    if (!(t >= 0.0)) {
        throw ParameterError("interval length must be non-negative");
    }
    auto body = [&](RandomStream& rng, double* out) {
        int count = 0;
        double clock = 0.0;
        for (int left = n; left > 0; --left) {
            clock += rng.exponential(plan.rate(left));
            if (clock > t) {
                break;
            }
            ++count;
        }
        out[static_cast<std::size_t>(count)] = 1.0;
    };
    return run_replications(static_cast<std::size_t>(n) + 1, replications, seed, threads, body);
}

}  // namespace fcpool
