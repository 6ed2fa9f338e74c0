#include "fcpool_cli/cli.hpp"

#include <fstream>
#include <functional>
#include <map>

#include <CLI11.hpp>

#include "fcpool/errors.hpp"
#include "fcpool_cli/commands.hpp"

namespace fcpool::cli {

namespace {

// Raw flag values; only options that were given override the config file.
struct Flags {
    std::string config;
    int k = 0;
    int m = 0;
    std::string plan;
    double lambda = 0.0;
    std::vector<double> rates;
    std::string service;
    double gamma = 0.0;
    std::vector<double> z;
    std::vector<double> alpha;
    std::vector<double> t;
    std::vector<int> j;
    std::vector<int> l;
    std::vector<double> p;
    std::vector<double> r;
    std::vector<double> tail;
    int order = 0;
    std::uint64_t seed = 0;
    std::int64_t replications = 0;
    int threads = 0;
    std::string method;
    int nodes = 0;
    double digits = 0.0;
    bool cross_check = false;
    std::string format;
    std::string output;
};

enum Group : unsigned {
    kModel = 1u << 0,
    kGamma = 1u << 1,
    kZ = 1u << 2,
    kAlpha = 1u << 3,
    kTimes = 1u << 4,
    kCustomers = 1u << 5,
    kLevels = 1u << 6,
    kGeometric = 1u << 7,
    kTail = 1u << 8,
    kOrder = 1u << 9,
    kSampling = 1u << 10,
    kInversion = 1u << 11,
};

struct Command {
    char const* name;
    char const* summary;
    unsigned groups;
    char const* default_format;
    std::function<Table(RunConfig const&)> table;
};

std::vector<Command> const& commands()
{
    static std::vector<Command> const list{
        {"pgf", "E z^Z(T) at an Exp(gamma) horizon over a z-grid", kModel | kGamma | kZ, "csv",
         pgf_table},
        {"pmf", "P(Z(T) = l) for l = 0..k+m", kModel | kGamma, "csv", pmf_table},
        {"moments", "factorial moments of Z(T)", kModel | kGamma | kOrder, "csv", moments_table},
        {"workload", "E exp(-alpha W(T)) over an alpha-grid", kModel | kGamma | kAlpha, "csv",
         workload_table},
        {"waiting", "FIFO waiting times: means, LSTs and emptiness probabilities",
         kModel | kAlpha | kCustomers, "csv", waiting_table},
        {"at-time", "queue length, PGF and workload LST at fixed times (Laplace inversion)",
         kModel | kTimes | kZ | kAlpha | kLevels | kInversion, "csv", at_time_table},
        {"geometric", "closed form for geometric k and m (exponential service, constant plan)",
         kModel | kGamma | kGeometric | kZ, "csv", geometric_table},
        {"simulate", "Monte Carlo estimates with standard errors",
         kModel | kGamma | kTimes | kZ | kAlpha | kTail | kSampling, "json", simulate_table},
        {"validate", "cross-check the algorithm against the CTMC oracle and simulation",
         kModel | kGamma | kTimes | kSampling | kInversion, "csv", validate_table},
    };
    return list;
}

void add_options(CLI::App& sub, Flags& f, unsigned groups)
{
    sub.add_option("--config", f.config, "YAML (or JSON) run configuration; flags override it");
    if (groups & kModel) {
        sub.add_option("--k", f.k, "customers present at time 0");
        sub.add_option("--m", f.m, "customers still to arrive");
        sub.add_option("--plan", f.plan,
                       "rate plan: constant[:LAMBDA], proportional[:LAMBDA] or general:R1,R2,...");
        sub.add_option("--lambda", f.lambda, "base arrival rate of constant/proportional plans");
        sub.add_option("--rates", f.rates, "arrival rates lambda_1..lambda_m of a general plan")
            ->delimiter(',');
        sub.add_option("--service", f.service,
                       "service law: exp:RATE, erlang:SHAPE:RATE, hyperexp:W@R,W@R,..., "
                       "det:VALUE or pareto:INDEX:SCALE");
    }
    if (groups & kGamma) {
        sub.add_option("--gamma", f.gamma, "rate of the exponential horizon T");
    }
    if (groups & kZ) {
        sub.add_option("--z", f.z, "comma-separated z values")->delimiter(',');
    }
    if (groups & kAlpha) {
        sub.add_option("--alpha", f.alpha, "comma-separated alpha values")->delimiter(',');
    }
    if (groups & kTimes) {
        sub.add_option("--t", f.t, "comma-separated observation times")->delimiter(',');
    }
    if (groups & kCustomers) {
        sub.add_option("--j", f.j, "customer indices (default: all)")->delimiter(',');
    }
    if (groups & kLevels) {
        sub.add_option("--l", f.l, "queue lengths to report (default: all)")->delimiter(',');
    }
    if (groups & kGeometric) {
        sub.add_option("--p", f.p, "geometric parameters p for k")->delimiter(',');
        sub.add_option("--r", f.r, "geometric parameters r for m, each in [0, 1)")
            ->delimiter(',');
    }
    if (groups & kTail) {
        sub.add_option("--tail", f.tail, "thresholds t for P(W_j > t)")->delimiter(',');
    }
    if (groups & kOrder) {
        sub.add_option("--order", f.order, "highest factorial moment order");
    }
    if (groups & kSampling) {
        sub.add_option("--replications", f.replications, "Monte Carlo replications");
        sub.add_option("--seed", f.seed, "master seed");
        sub.add_option("--threads", f.threads, "worker threads, 0 for all cores");
    }
    if (groups & kInversion) {
        sub.add_option("--method", f.method, "Laplace inversion: euler or talbot");
        sub.add_option("--nodes", f.nodes, "inversion terms / contour nodes (even, >= 8)");
        sub.add_option("--digits", f.digits, "Euler accuracy target in decimal digits");
        sub.add_flag("--cross-check", f.cross_check,
                     "also run the other inversion method; fail on disagreement");
    }
    sub.add_option("--format", f.format, "output format: csv or json");
    sub.add_option("--output", f.output, "output file, - for standard output");
}

RunConfig effective_config(CLI::App const& sub, Flags const& f)
{
    RunConfig c = f.config.empty() ? RunConfig{} : RunConfig::from_file(f.config);
    auto given = [&](char const* name) {
        CLI::Option const* opt = sub.get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--k")) c.model.k = f.k;
    if (given("--m")) c.model.m = f.m;
    if (given("--plan")) apply_plan_flag(c.model.plan, f.plan);
    if (given("--lambda")) c.model.plan.lambda = f.lambda;
    if (given("--rates")) {
        c.model.plan.rates = f.rates;
        if (!given("--plan")) c.model.plan.kind = "general";
    }
    if (given("--service")) c.model.service = parse_service_flag(f.service);
    if (given("--gamma")) c.query.gamma = f.gamma;
    if (given("--z")) c.query.z = f.z;
    if (given("--alpha")) c.query.alpha = f.alpha;
    if (given("--t")) c.query.t = f.t;
    if (given("--j")) c.query.j = f.j;
    if (given("--l")) c.query.l = f.l;
    if (given("--p")) c.query.p = f.p;
    if (given("--r")) c.query.r = f.r;
    if (given("--tail")) c.query.tail = f.tail;
    if (given("--order")) c.query.order = f.order;
    if (given("--seed")) c.execution.seed = f.seed;
    if (given("--replications")) c.execution.replications = f.replications;
    if (given("--threads")) c.execution.threads = f.threads;
    if (given("--method")) c.execution.method = f.method;
    if (given("--nodes")) c.execution.nodes = f.nodes;
    if (given("--digits")) c.execution.digits = f.digits;
    if (given("--cross-check")) c.execution.cross_check = f.cross_check;
    if (given("--format")) c.execution.format = f.format;
    if (given("--output")) c.execution.output = f.output;
    return c;
}

void emit(RunConfig const& config, Table const& table, std::ostream& out)
{
    auto write = [&](std::ostream& os) {
        if (config.execution.format == "json") {
            write_json(os, table, config.to_json());
        } else {
            write_csv(os, table);
        }
    };
    if (config.execution.output == "-" || config.execution.output.empty()) {
        write(out);
        return;
    }
    std::ofstream file(config.execution.output, std::ios::binary);
    if (!file) {
        throw UsageError("cannot write output file '" + config.execution.output + "'");
    }
    write(file);
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Transient analysis of a single-server queue fed by a finite customer pool",
                 "fcpool"};
    app.require_subcommand(1);
    app.fallthrough(false);

    Flags flags;
    std::map<std::string, CLI::App*> subs;
    for (Command const& cmd : commands()) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.summary);
        add_options(*sub, flags, cmd.groups);
        subs[cmd.name] = sub;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (CLI::CallForHelp const& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (CLI::CallForAllHelp const& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (CLI::ParseError const& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    for (Command const& cmd : commands()) {
        CLI::App const& sub = *subs.at(cmd.name);
        if (!sub.parsed()) {
            continue;
        }
        try {
            RunConfig config = effective_config(sub, flags);
            if (config.execution.format.empty()) {
                config.execution.format = cmd.default_format;
            }
            config.normalize();
            config.validate();
            Table const table = cmd.table(config);
            emit(config, table, out);
            if (std::string(cmd.name) == "validate" && !table_passed(table)) {
                err << "validation failed\n";
                return kExitValidationFailed;
            }
            return kExitOk;
        } catch (UsageError const& e) {
            err << "usage error: " << e.what() << "\n";
            return kExitUsage;
        } catch (fcpool::Error const& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    }
    return kExitUsage;
}

}  // namespace fcpool::cli
