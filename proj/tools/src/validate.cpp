#include <algorithm>
#include <cmath>
#include <limits>

#include "fcpool/ctmc.hpp"
#include "fcpool/errors.hpp"
#include "fcpool/inversion.hpp"
#include "fcpool/kernels.hpp"
#include "fcpool/simulator.hpp"
#include "fcpool/transient.hpp"
#include "fcpool/waiting.hpp"
#include "fcpool_cli/commands.hpp"

namespace fcpool::cli {

namespace {

constexpr double kStandardErrors = 4.0;

struct Checker {
    Table table;

    Checker() { table.columns = {"check", "deviation", "tolerance", "status"}; }

    void record(std::string name, double deviation, double tolerance)
    {
        bool const pass = deviation <= tolerance;
        table.add({std::move(name), deviation, tolerance, std::string(pass ? "PASS" : "FAIL")});
    }
    void skip(std::string name, std::string const& reason)
    {
        table.add({std::move(name), Cell{}, Cell{}, std::string("SKIP: " + reason)});
    }
};

// Largest |estimate - exact| in units of standard error. A zero empirical
// error (no hits) falls back to the binomial error of the exact value.
double worst_z(std::vector<Estimate> const& est, std::vector<double> const& exact,
               std::int64_t replications, bool indicator)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        double const gap = std::abs(est[i].mean - exact[i]);
        double se = est[i].standard_error;
        if (se == 0.0 && indicator) {
            se = std::sqrt(std::max(exact[i] * (1.0 - exact[i]), 0.0) / replications);
        }
        if (gap <= 1e-12) {
            continue;
        }
        worst = std::max(worst, se > 0.0 ? gap / se : std::numeric_limits<double>::infinity());
    }
    return worst;
}

}  // namespace

Table validate_table(RunConfig const& config)
{
    Model const model = config.build_model();
    double const gamma = config.query.gamma;
    Checker check;
    bool const analytic = model.law.transform_capable();

    if (analytic) {
        KernelTables const tables = build_tables(model.plan, model.law, gamma);
        double const beta = tables.lst_at_gamma().real();
        double worst = 0.0;
        for (int n = 0; n <= model.m(); ++n) {
            double su = 0.0;
            double sv = 0.0;
            double sw = 0.0;
            for (int i = 0; i <= n; ++i) {
                su += tables.u(n, i).real();
                sv += tables.v(n, i).real();
                sw += tables.w(n, i);
            }
            worst = std::max({worst, std::abs(su - beta), std::abs(sv - (1.0 - beta)),
                              std::abs(sw - 1.0)});
        }
        check.record("kernel row sums", worst, 1e-10);

        std::vector<double> const probs = pmf(model, gamma);
        double total = 0.0;
        for (double const p : probs) {
            total += p;
        }
        check.record("pgf normalization", std::abs(total - 1.0), 1e-10);

        if (model.law.is_exponential()) {
            std::vector<double> const oracle = ctmc_resolvent(model, gamma).queue_marginal();
            double gap = 0.0;
            for (std::size_t l = 0; l < probs.size(); ++l) {
                gap = std::max(gap, std::abs(probs[l] - oracle[l]));
            }
            check.record("pgf vs CTMC resolvent", gap, 1e-10);

            InversionConfig const inv = config.inversion();
            for (double const t : config.query.t.empty() ? std::vector<double>{1.0} : config.query.t) {
                std::vector<double> const inverted = pmf_at_time(model, t, inv);
                std::vector<double> const exact = ctmc_at_time(model, t).queue_marginal();
                double worst_t = 0.0;
                for (std::size_t l = 0; l < exact.size(); ++l) {
                    worst_t = std::max(worst_t, std::abs(inverted[l] - exact[l]));
                }
                check.record("pmf at t=" + format_number(t) + " vs CTMC uniformization",
                             worst_t, 1e-6);
            }
        } else {
            check.skip("pgf vs CTMC resolvent", "service is not exponential");
        }
    } else {
        check.skip("kernel row sums", "service law has no transforms");
    }

    SimConfig sim(model);
    sim.gamma = gamma;
    sim.replications = config.execution.replications;
    sim.seed = config.execution.seed;
    sim.threads = config.execution.threads;
    SimReport const rep = simulate(sim);

    if (analytic) {
        check.record("pmf vs simulation (max |z|)",
                     worst_z(rep.pmf_at_horizon, pmf(model, gamma), sim.replications, true),
                     kStandardErrors);
        if (model.customers() > 0) {
            WaitingTimes const times(model);
            std::vector<double> exact;
            double slope_gap = 0.0;
            double const h = 1e-4;
            for (int j = 1; j <= model.customers(); ++j) {
                exact.push_back(times.mean(j));
                // Second-order one-sided difference at alpha = 0.
                double const slope =
                    (-3.0 + 4.0 * times.lst(j, h).real() - times.lst(j, 2.0 * h).real()) / (2.0 * h);
                slope_gap = std::max(slope_gap, std::abs(-slope - exact.back()));
            }
            check.record("waiting means vs simulation (max |z|)",
                         worst_z(rep.waiting_mean, exact, sim.replications, false),
                         kStandardErrors);
            check.record("waiting LST slope vs mean", slope_gap, 1e-6);
        }
    } else {
        check.skip("pmf vs simulation", "no analytic value for this service law");
    }
    return check.table;
}

bool table_passed(Table const& validation)
{
    for (auto const& r : validation.rows) {
        if (std::get<std::string>(r.back()) == "FAIL") {
            return false;
        }
    }
    return true;
}

}  // namespace fcpool::cli
