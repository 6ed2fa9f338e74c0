#include "fcpool_cli/commands.hpp"

#include <cmath>

#include "fcpool/geometric.hpp"
#include "fcpool/inversion.hpp"
#include "fcpool/simulator.hpp"
#include "fcpool/transient.hpp"
#include "fcpool/waiting.hpp"

namespace fcpool::cli {

namespace {

std::vector<double> or_default(std::vector<double> const& values, std::vector<double> fallback)
{
    return values.empty() ? fallback : values;
}

// Parameter echo shared by the model-driven tables.
std::vector<std::string> echo_columns(bool with_gamma)
{
    std::vector<std::string> cols{"k", "m", "plan", "service"};
    if (with_gamma) {
        cols.emplace_back("gamma");
    }
    return cols;
}

std::vector<Cell> echo_cells(RunConfig const& config, Model const& model, bool with_gamma)
{
    std::vector<Cell> cells{std::int64_t{config.model.k}, std::int64_t{model.m()},
                            model.plan.describe(), model.law.describe()};
    if (with_gamma) {
        cells.emplace_back(config.query.gamma);
    }
    return cells;
}

Table with_echo(std::vector<std::string> cols, bool with_gamma)
{
    Table t;
    t.columns = echo_columns(with_gamma);
    t.columns.insert(t.columns.end(), cols.begin(), cols.end());
    return t;
}

std::vector<Cell> row(std::vector<Cell> echo, std::vector<Cell> values)
{
    echo.insert(echo.end(), values.begin(), values.end());
    return echo;
}

}  // namespace

Table pgf_table(RunConfig const& config)
{
    Model const model = config.build_model();
    PgfPolynomial const poly = pgf(model, config.query.gamma);
    Table t = with_echo({"z", "pgf"}, true);
    auto const echo = echo_cells(config, model, true);
    for (double const z : or_default(config.query.z, {0.0, 0.25, 0.5, 0.75, 1.0})) {
        t.add(row(echo, {z, poly.evaluate(z)}));
    }
    return t;
}

Table pmf_table(RunConfig const& config)
{
    Model const model = config.build_model();
    std::vector<double> const probs = pmf(model, config.query.gamma);
    Table t = with_echo({"l", "probability"}, true);
    auto const echo = echo_cells(config, model, true);
    for (std::size_t l = 0; l < probs.size(); ++l) {
        t.add(row(echo, {static_cast<std::int64_t>(l), probs[l]}));
    }
    return t;
}

Table moments_table(RunConfig const& config)
{
    Model const model = config.build_model();
    std::vector<double> const moments =
        factorial_moments(model, config.query.gamma, config.query.order);
    Table t = with_echo({"order", "factorial_moment"}, true);
    auto const echo = echo_cells(config, model, true);
    for (std::size_t r = 0; r < moments.size(); ++r) {
        t.add(row(echo, {static_cast<std::int64_t>(r), moments[r]}));
    }
    return t;
}

Table workload_table(RunConfig const& config)
{
    Model const model = config.build_model();
    KernelTables const tables = build_tables(model.plan, model.law, config.query.gamma);
    Table t = with_echo({"alpha", "lst"}, true);
    auto const echo = echo_cells(config, model, true);
    for (double const a : or_default(config.query.alpha, {0.0, 0.5, 1.0, 2.0})) {
        if (a < 0.0) {
            throw UsageError("workload alpha values must be non-negative");
        }
        t.add(row(echo, {a, workload_lst(model.k, tables, a).real()}));
    }
    return t;
}

Table waiting_table(RunConfig const& config)
{
    Model const model = config.build_model();
    WaitingTimes const times(model);
    std::vector<int> js = config.query.j;
    if (js.empty()) {
        for (int j = 1; j <= model.customers(); ++j) {
            js.push_back(j);
        }
    }
    Table t = with_echo({"j", "alpha", "mean", "lst", "rho"}, false);
    auto const echo = echo_cells(config, model, false);
    for (int const j : js) {
        double const mean = times.mean(j);
        Cell rho;
        if (j > model.k) {
            rho = times.emptiness()[static_cast<std::size_t>(j - model.k - 1)];
        }
        for (double const a : or_default(config.query.alpha, {0.0, 1.0})) {
            if (a < 0.0) {
                throw UsageError("waiting-time alpha values must be non-negative");
            }
            t.add(row(echo, {std::int64_t{j}, a, mean, times.lst(j, a).real(), rho}));
        }
    }
    return t;
}

Table at_time_table(RunConfig const& config)
{
    Model const model = config.build_model();
    InversionConfig const inv = config.inversion();
    Table t = with_echo({"method", "t", "quantity", "argument", "value"}, false);
    auto const echo = echo_cells(config, model, false);
    for (double const time : or_default(config.query.t, {1.0})) {
        if (time < 0.0) {
            throw UsageError("times must be non-negative");
        }
        std::vector<double> const probs = pmf_at_time(model, time, inv);
        std::vector<int> ls = config.query.l;
        if (ls.empty()) {
            for (int l = 0; l < static_cast<int>(probs.size()); ++l) {
                ls.push_back(l);
            }
        }
        for (int const l : ls) {
            if (l < 0 || l >= static_cast<int>(probs.size())) {
                throw UsageError("queue length " + std::to_string(l) + " outside 0.." +
                                 std::to_string(probs.size() - 1));
            }
            t.add(row(echo, {config.execution.method, time, std::string("pmf"), std::int64_t{l},
                             probs[static_cast<std::size_t>(l)]}));
        }
        double mean = 0.0;
        for (std::size_t l = 0; l < probs.size(); ++l) {
            mean += static_cast<double>(l) * probs[l];
        }
        t.add(row(echo, {config.execution.method, time, std::string("mean"), Cell{}, mean}));
        for (double const z : config.query.z) {
            t.add(row(echo, {config.execution.method, time, std::string("pgf"), z,
                             pgf_at_time(model, z, time, inv)}));
        }
        for (double const a : config.query.alpha) {
            t.add(row(echo, {config.execution.method, time, std::string("workload"), a,
                             workload_lst_at_time(model, a, time, inv)}));
        }
    }
    return t;
}

Table geometric_table(RunConfig const& config)
{
    GeometricPoolParams const params =
        GeometricPoolParams::from_model(config.rate_plan(), config.service_law(), config.query.gamma);
    Table t;
    t.columns = {"lambda", "mu", "gamma", "p", "r", "z", "m0", "g", "mixed_pgf"};
    for (double const p : or_default(config.query.p, {0.0, 0.3})) {
        for (double const r : or_default(config.query.r, {0.0, 0.3})) {
            for (double const z : or_default(config.query.z, {0.25, 0.75})) {
                t.add({params.lambda, params.mu, params.gamma, p, r, z, m0(params, r, z),
                       g(params, p, r, z), mixed_pgf(params, p, r, z)});
            }
        }
    }
    return t;
}

Table simulate_table(RunConfig const& config)
{
    Model const model = config.build_model();
    SimConfig sim(model);
    sim.gamma = config.query.gamma;
    sim.times = config.query.t;
    sim.z_grid = config.query.z;
    sim.alpha_grid = config.query.alpha;
    sim.tail_points = config.query.tail;
    sim.replications = config.execution.replications;
    sim.seed = config.execution.seed;
    sim.threads = config.execution.threads;
    SimReport const rep = simulate(sim);

    Table t = with_echo({"replications", "seed", "target", "index", "argument", "mean",
                         "standard_error"},
                        true);
    auto echo = echo_cells(config, model, true);
    echo.emplace_back(static_cast<std::int64_t>(rep.replications));
    echo.emplace_back(static_cast<std::int64_t>(config.execution.seed));
    auto put = [&](char const* target, Cell index, Cell argument, Estimate const& e) {
        t.add(row(echo, {std::string(target), std::move(index), std::move(argument), e.mean,
                         e.standard_error}));
    };
    for (std::size_t l = 0; l < rep.pmf_at_horizon.size(); ++l) {
        put("pmf_T", static_cast<std::int64_t>(l), Cell{}, rep.pmf_at_horizon[l]);
    }
    for (std::size_t q = 0; q < rep.pgf_at_horizon.size(); ++q) {
        put("pgf_T", Cell{}, sim.z_grid[q], rep.pgf_at_horizon[q]);
    }
    for (std::size_t q = 0; q < rep.workload_lst_at_horizon.size(); ++q) {
        put("workload_lst_T", Cell{}, sim.alpha_grid[q], rep.workload_lst_at_horizon[q]);
    }
    for (std::size_t q = 0; q < rep.pmf_at_times.size(); ++q) {
        for (std::size_t l = 0; l < rep.pmf_at_times[q].size(); ++l) {
            put("pmf_t", static_cast<std::int64_t>(l), sim.times[q], rep.pmf_at_times[q][l]);
        }
    }
    for (std::size_t j = 0; j < rep.waiting_mean.size(); ++j) {
        put("waiting_mean", static_cast<std::int64_t>(j + 1), Cell{}, rep.waiting_mean[j]);
    }
    for (std::size_t j = 0; j < rep.waiting_tail.size(); ++j) {
        for (std::size_t q = 0; q < rep.waiting_tail[j].size(); ++q) {
            put("waiting_tail", static_cast<std::int64_t>(j + 1), sim.tail_points[q],
                rep.waiting_tail[j][q]);
        }
    }
    return t;
}

}  // namespace fcpool::cli
