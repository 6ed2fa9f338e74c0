// Acceptance checks. Each criterion prints one PASS or FAIL line.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "fcpool/ctmc.hpp"
#include "fcpool/geometric.hpp"
#include "fcpool/inversion.hpp"
#include "fcpool/kernels.hpp"
#include "fcpool/simulator.hpp"
#include "fcpool/transient.hpp"
#include "fcpool/waiting.hpp"
#include "oracles.hpp"

namespace fcpool {
namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Criterion {
    int id;
    char const* name;
    double budget_seconds;
    std::function<Outcome()> run;
};

/// Tracks the worst deviation against a fixed tolerance.
struct Worst {
    double tolerance;
    double deviation = 0.0;
    std::string where;

    void see(double d, std::string const& at)
    {
        if (!(d <= deviation)) {
            deviation = d;
            where = at;
        }
    }
    bool ok() const { return deviation <= tolerance; }
    std::string text() const
    {
        char buf[160];
        std::snprintf(buf, sizeof buf, "max deviation %.3g (tol %.0e)", deviation, tolerance);
        return where.empty() ? buf : std::string(buf) + " at " + where;
    }
};

std::string fmt(char const* f, auto... args)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<RatePlan> all_plans(int m)
{
    std::vector<double> rates;
    for (int i = 1; i <= m; ++i) {
        rates.push_back(0.45 + 0.3 * i);
    }
    return {RatePlan::constant(1.1, m), RatePlan::proportional(0.6, m), RatePlan::general(rates)};
}

std::vector<ServiceLaw> transform_laws()
{
    return {ServiceLaw::exponential(1.4), ServiceLaw::erlang(2, 2.5),
            ServiceLaw::hyperexponential({0.3, 0.7}, {0.5, 3.0}), ServiceLaw::deterministic(0.8)};
}

Outcome kernel_identities()
{
    Worst worst{1e-10};
    for (auto const& law : transform_laws()) {
        for (int m = 0; m <= 8; ++m) {
            for (auto const& plan : all_plans(m)) {
                for (double gamma : {0.3, 1.0, 3.0}) {
                    auto const t = build_tables(plan, law, gamma);
                    Complex const beta = law.lst(Complex(gamma, 0.0));
                    for (int n = 0; n <= m; ++n) {
                        Complex su = 0.0;
                        Complex sv = 0.0;
                        double sw = 0.0;
                        for (int i = 0; i <= n; ++i) {
                            su += t.u(n, i);
                            sv += t.v(n, i);
                            sw += t.w(n, i);
                        }
                        std::string const at =
                            law.describe() + " " + plan.describe() + fmt(" gamma=%g n=%d", gamma, n);
                        worst.see(std::abs(su - beta), at);
                        worst.see(std::abs(sv - (1.0 - beta)), at);
                        worst.see(std::abs(sw - 1.0), at);
                    }
                }
            }
        }
    }
    return {worst.ok(), worst.text()};
}

Outcome exponential_closed_form()
{
    Worst worst{1e-12};
    double const mu = 1.3;
    for (int m = 0; m <= 6; ++m) {
        for (auto const& plan : {RatePlan::constant(0.9, m), RatePlan::proportional(0.5, m)}) {
            for (double gamma : {0.4, 1.0, 2.5}) {
                auto const t = build_tables(plan, ServiceLaw::exponential(mu), gamma);
                std::vector<double> rates;
                for (int j = 1; j <= m; ++j) {
                    rates.push_back(plan.rate(j));
                }
                for (int n = 0; n <= m; ++n) {
                    for (int i = 0; i <= n; ++i) {
                        std::string const at = plan.describe() + fmt(" gamma=%g n=%d i=%d", gamma, n, i);
                        worst.see(std::abs(gamma * t.u(n, i) - mu * t.v(n, i)), at);
                        worst.see(std::abs(t.u(n, i).real() -
                                           testing::exponential_u(rates, mu, gamma, n, i)),
                                  at);
                    }
                }
            }
        }
    }
    return {worst.ok(), worst.text()};
}

Outcome pgf_vs_resolvent()
{
    Worst worst{1e-10};
    struct Triple {
        double lambda, mu, gamma;
    };
    Triple const triples[3] = {{1.0, 1.0, 1.0}, {0.5, 2.0, 0.3}, {2.0, 0.8, 1.7}};
    for (auto const& tr : triples) {
        for (int k = 0; k <= 6; ++k) {
            for (int m = 0; m <= 6; ++m) {
                for (auto const& plan :
                     {RatePlan::constant(tr.lambda, m), RatePlan::proportional(tr.lambda, m)}) {
                    Model const model(k, plan, ServiceLaw::exponential(tr.mu));
                    auto const p = pmf(model, tr.gamma);
                    auto const oracle = ctmc_resolvent(model, tr.gamma).queue_marginal();
                    for (std::size_t l = 0; l < p.size(); ++l) {
                        worst.see(std::abs(p[l] - oracle[l]),
                                  plan.describe() + fmt(" lambda=%g mu=%g gamma=%g k=%d l=%zu", tr.lambda,
                                                        tr.mu, tr.gamma, k, l));
                    }
                }
            }
        }
    }
    return {worst.ok(), worst.text()};
}

Outcome pmf_vs_simulation()
{
    double worst_z = 0.0;
    std::string where;
    double const gamma = 0.8;
    for (auto const& law : {ServiceLaw::erlang(2, 2.0), ServiceLaw::deterministic(0.9)}) {
        Model const model(2, RatePlan::proportional(0.7, 3), law);
        auto const exact = pmf(model, gamma);
        SimConfig cfg(model);
        cfg.gamma = gamma;
        cfg.replications = 1000000;
        cfg.seed = 20261014;
        auto const report = simulate(cfg);
        for (std::size_t l = 0; l < exact.size(); ++l) {
            auto const& e = report.pmf_at_horizon[l];
            double const diff = std::abs(e.mean - exact[l]);
            double const z = diff <= 1e-12 ? 0.0 : diff / e.standard_error;
            if (!(z <= worst_z)) {
                worst_z = z;
                where = law.describe() + fmt(" l=%zu", l);
            }
        }
    }
    return {worst_z <= 4.0, fmt("max |error|/SE %.3f (limit 4) at ", worst_z) + where};
}

Outcome inversion_round_trip()
{
    Worst ctmc{1e-6};
    Model const model(1, RatePlan::constant(0.8, 1), ServiceLaw::exponential(1.3));
    for (double t : {0.25, 1.0, 4.0}) {
        auto const p = pmf_at_time(model, t);
        auto const oracle = ctmc_at_time(model, t).queue_marginal();
        for (std::size_t l = 0; l < p.size(); ++l) {
            ctmc.see(std::abs(p[l] - oracle[l]), fmt("t=%g l=%zu", t, l));
        }
    }
    Worst closed{1e-8};
    double const mu = 1.3;
    Model const single(1, RatePlan::constant(1.0, 0), ServiceLaw::exponential(mu));
    for (double t : {0.25, 1.0, 4.0}) {
        closed.see(std::abs(pmf_at_time(single, t)[0] - (1.0 - std::exp(-mu * t))), fmt("t=%g", t));
    }
    return {ctmc.ok() && closed.ok(), "vs uniformization " + ctmc.text() + "; closed form " + closed.text()};
}

Outcome waiting_times()
{
    double worst_z = 0.0;
    std::string where;
    for (auto const& law : {ServiceLaw::exponential(1.5), ServiceLaw::erlang(2, 2.0)}) {
        Model const model(2, RatePlan::proportional(0.7, 3), law);
        WaitingTimes const waiting(model);
        SimConfig cfg(model);
        cfg.replications = 1000000;
        cfg.seed = 1789;
        auto const report = simulate(cfg);
        for (int j = 1; j <= model.customers(); ++j) {
            auto const& e = report.waiting_mean[j - 1];
            double const diff = std::abs(e.mean - waiting.mean(j));
            double const z = diff <= 1e-12 ? 0.0 : diff / e.standard_error;
            if (!(z <= worst_z)) {
                worst_z = z;
                where = law.describe() + fmt(" j=%d", j);
            }
        }
    }

    Model const hand(1, RatePlan::constant(1.0, 1), ServiceLaw::exponential(1.0));
    WaitingTimes const hw(hand);
    double const rho2 = hw.emptiness().at(0);
    double const ew2 = hw.mean(2);
    bool const hand_ok = rho2 == 0.5 && ew2 == 0.5;

    Worst slope{1e-6};
    double const h = 1e-4;
    for (auto const& law : transform_laws()) {
        Model const model(2, RatePlan::proportional(0.7, 3), law);
        WaitingTimes const w(model);
        for (int j = 1; j <= model.customers(); ++j) {
            double const f1 = w.lst(j, Complex(h, 0.0)).real();
            double const f2 = w.lst(j, Complex(2 * h, 0.0)).real();
            double const derivative = (-3.0 * w.lst(j, 0.0).real() + 4.0 * f1 - f2) / (2.0 * h);
            slope.see(std::abs(-derivative - w.mean(j)), law.describe() + fmt(" j=%d", j));
        }
    }
    return {worst_z <= 4.0 && hand_ok && slope.ok(),
            fmt("max |error|/SE %.3f (limit 4) at ", worst_z) + where +
                fmt("; hand case rho2=%.17g E[W2]=%.17g; ", rho2, ew2) + "slope " + slope.text()};
}

Outcome geometric_pool()
{
    struct Point {
        double p, r, z;
    };
    Point const points[5] = {
        {0.1, 0.2, 0.3}, {0.5, 0.1, 0.9}, {0.3, 0.6, 0.15}, {0.7, 0.4, 0.62}, {0.2, 0.5, 1.0}};
    GeometricPoolParams const triples[3] = {{1.0, 1.0, 0.8}, {0.5, 2.0, 0.3}, {2.0, 1.5, 1.0}};
    Worst series{1e-8};
    Worst relation{1e-8};
    bool unit = true;
    for (auto const& q : triples) {
        for (double z : {0.05, 0.3, 0.77, 1.0}) {
            unit = unit && m0(q, 0.0, z) == 1.0;
        }
        for (auto const& pt : points) {
            std::string const at = fmt("lambda=%g mu=%g gamma=%g p=%g r=%g z=%g", q.lambda, q.mu,
                                       q.gamma, pt.p, pt.r, pt.z);
            int const n = testing::series_terms(pt.p, pt.r);
            double const sum = testing::geometric_series(q.lambda, q.mu, q.gamma, pt.p, pt.r, pt.z, n);
            series.see(std::abs(g(q, pt.p, pt.r, pt.z) - sum), at);

            // M_1(r, z) = sum_n r^n mu_{1,n}(z) from the recursion.
            auto const tables = build_tables(RatePlan::constant(q.lambda, n),
                                             ServiceLaw::exponential(q.mu), q.gamma);
            auto const grid = pgf_value_grid(1, tables, pt.z);
            double m1 = 0.0;
            double rn = 1.0;
            for (int j = 0; j <= n; ++j) {
                m1 += rn * grid[j][1].real();
                rn *= pt.r;
            }
            double const lg = q.lambda + q.gamma;
            double const lhs = m0(q, pt.r, pt.z) - 1.0 - q.gamma / lg * pt.r / (1.0 - pt.r) -
                               q.lambda / lg * pt.r * m1;
            relation.see(std::abs(lhs), at);
        }
    }
    return {series.ok() && relation.ok() && unit,
            "series " + series.text() + "; relation " + relation.text() +
                (unit ? "; M0(0,z)=1 exact" : "; M0(0,z)!=1")};
}

Outcome heavy_tail()
{
    auto const law = ServiceLaw::pareto(1.5, 1.0);
    double const t = std::pow(1e-3, -1.0 / 1.5);
    Model const model(0, RatePlan::constant(1.0, 4), law);
    SimConfig cfg(model);
    cfg.tail_points = {t};
    cfg.replications = 10000000;
    cfg.seed = 4242;
    auto const report = simulate(cfg);
    auto const& e = report.waiting_tail[3][0];
    double const ratio = e.mean / tail_asymptote(4, t, law);
    return {ratio >= 0.7 && ratio <= 1.3,
            fmt("t=%g P(W4>t)=%.4g (SE %.2g) ratio %.4f (range [0.7, 1.3])", t, e.mean,
                e.standard_error, ratio)};
}

Outcome complexity_scaling()
{
    using clock = std::chrono::steady_clock;
    int const k = 20;
    std::vector<double> seconds;
    for (int m : {100, 200, 400}) {
        double best = 1e300;
        int const reps = m <= 100 ? 5 : 3;
        for (int rep = 0; rep < reps; ++rep) {
            auto const start = clock::now();
            auto const tables = build_tables(RatePlan::constant(1.0, m), ServiceLaw::exponential(1.5), 0.7);
            volatile double sink = pgf_value(k, tables, Complex(0.6, 0.0)).real();
            (void)sink;
            best = std::min(best, std::chrono::duration<double>(clock::now() - start).count());
        }
        seconds.push_back(best);
    }
    double const r1 = seconds[1] / seconds[0];
    double const r2 = seconds[2] / seconds[1];
    bool const ok = r1 >= 3.0 && r1 <= 5.0 && r2 >= 3.0 && r2 <= 5.0;
    return {ok, fmt("times %.4g, %.4g, %.4g s; ratios %.3f, %.3f (range [3, 5])", seconds[0],
                    seconds[1], seconds[2], r1, r2)};
}

}  // namespace
}  // namespace fcpool

int main(int argc, char** argv)
{
    using namespace fcpool;
    CLI::App app{"fcpool acceptance checks"};
    std::vector<int> only;
    app.add_option("--only", only, "Run only these criteria (1-9)")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);

    std::vector<Criterion> const criteria = {
        {1, "kernel identities", 5.0, kernel_identities},
        {2, "exponential closed form", 1.0, exponential_closed_form},
        {3, "pgf vs CTMC resolvent", 10.0, pgf_vs_resolvent},
        {4, "pmf vs simulation", 60.0, pmf_vs_simulation},
        {5, "inversion round trip", 10.0, inversion_round_trip},
        {6, "waiting times", 60.0, waiting_times},
        {7, "geometric pool", 30.0, geometric_pool},
        {8, "heavy tail", 300.0, heavy_tail},
        {9, "complexity scaling", 120.0, complexity_scaling},
    };

    int failures = 0;
    for (auto const& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) {
            continue;
        }
        auto const start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (std::exception const& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        double const elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool const in_time = elapsed < c.budget_seconds;
        bool const pass = out.ok && in_time;
        failures += pass ? 0 : 1;
        std::printf("%s criterion %d (%s): %s; %.2f s (budget %g s)%s\n", pass ? "PASS" : "FAIL", c.id,
                    c.name, out.detail.c_str(), elapsed, c.budget_seconds, in_time ? "" : " over budget");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
