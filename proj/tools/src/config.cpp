#include "fcpool_cli/config.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace fcpool::cli {

namespace {

using Keys = std::set<std::string>;

void reject_unknown(YAML::Node const& node, Keys const& allowed, std::string const& where)
{
    if (!node.IsMap()) {
        throw UsageError("config: '" + where + "' must be a mapping");
    }
    for (auto const& entry : node) {
        std::string const key = entry.first.as<std::string>();
        if (!allowed.count(key)) {
            throw UsageError("config: unknown key '" + key + "' in '" + where + "'");
        }
    }
}

template <typename T>
void read(YAML::Node const& node, char const* key, T& into, std::string const& where)
{
    if (!node[key]) {
        return;
    }
    try {
        into = node[key].as<T>();
    } catch (YAML::Exception const&) {
        throw UsageError("config: bad value for '" + where + "." + key + "'");
    }
}

double to_double(std::string const& text, std::string const& what)
{
    double value = 0.0;
    char const* first = text.data();
    char const* last = first + text.size();
    auto const res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
        throw UsageError("cannot read " + what + " from '" + text + "'");
    }
    return value;
}

int to_int(std::string const& text, std::string const& what)
{
    int value = 0;
    char const* first = text.data();
    char const* last = first + text.size();
    auto const res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
        throw UsageError("cannot read " + what + " from '" + text + "'");
    }
    return value;
}

std::vector<std::string> split(std::string const& text, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        out.push_back(item);
    }
    if (!text.empty() && text.back() == sep) {
        out.emplace_back();
    }
    return out;
}

std::vector<double> to_doubles(std::string const& text, std::string const& what)
{
    std::vector<double> out;
    for (std::string const& item : split(text, ',')) {
        out.push_back(to_double(item, what));
    }
    return out;
}

PlanConfig read_plan(YAML::Node const& node)
{
    PlanConfig plan;
    if (node.IsScalar()) {
        apply_plan_flag(plan, node.as<std::string>());
        return plan;
    }
    reject_unknown(node, {"kind", "lambda", "rates"}, "model.plan");
    read(node, "kind", plan.kind, "model.plan");
    read(node, "lambda", plan.lambda, "model.plan");
    read(node, "rates", plan.rates, "model.plan");
    return plan;
}

ServiceConfig read_service(YAML::Node const& node)
{
    if (node.IsScalar()) {
        return parse_service_flag(node.as<std::string>());
    }
    ServiceConfig s;
    reject_unknown(node, {"kind", "rate", "shape", "weights", "rates", "value", "index", "scale"},
                   "model.service");
    read(node, "kind", s.kind, "model.service");
    read(node, "rate", s.rate, "model.service");
    read(node, "shape", s.shape, "model.service");
    read(node, "weights", s.weights, "model.service");
    read(node, "rates", s.rates, "model.service");
    read(node, "value", s.value, "model.service");
    read(node, "index", s.index, "model.service");
    read(node, "scale", s.scale, "model.service");
    return s;
}

RunConfig from_node(YAML::Node const& root)
{
    RunConfig c;
    if (!root || root.IsNull()) {
        return c;
    }
    reject_unknown(root, {"model", "query", "execution"}, "<root>");
    if (YAML::Node const model = root["model"]) {
        reject_unknown(model, {"k", "m", "plan", "service"}, "model");
        read(model, "k", c.model.k, "model");
        read(model, "m", c.model.m, "model");
        if (model["plan"]) {
            c.model.plan = read_plan(model["plan"]);
        }
        if (model["service"]) {
            c.model.service = read_service(model["service"]);
        }
    }
    if (YAML::Node const q = root["query"]) {
        reject_unknown(q, {"gamma", "z", "alpha", "t", "j", "l", "p", "r", "tail", "order"},
                       "query");
        read(q, "gamma", c.query.gamma, "query");
        read(q, "z", c.query.z, "query");
        read(q, "alpha", c.query.alpha, "query");
        read(q, "t", c.query.t, "query");
        read(q, "j", c.query.j, "query");
        read(q, "l", c.query.l, "query");
        read(q, "p", c.query.p, "query");
        read(q, "r", c.query.r, "query");
        read(q, "tail", c.query.tail, "query");
        read(q, "order", c.query.order, "query");
    }
    if (YAML::Node const e = root["execution"]) {
        reject_unknown(e,
                       {"seed", "replications", "threads", "method", "nodes", "digits",
                        "cross_check", "format", "output"},
                       "execution");
        read(e, "seed", c.execution.seed, "execution");
        read(e, "replications", c.execution.replications, "execution");
        read(e, "threads", c.execution.threads, "execution");
        read(e, "method", c.execution.method, "execution");
        read(e, "nodes", c.execution.nodes, "execution");
        read(e, "digits", c.execution.digits, "execution");
        read(e, "cross_check", c.execution.cross_check, "execution");
        read(e, "format", c.execution.format, "execution");
        read(e, "output", c.execution.output, "execution");
    }
    return c;
}

}  // namespace

void apply_plan_flag(PlanConfig& plan, std::string const& text)
{
    std::size_t const colon = text.find(':');
    std::string const kind = text.substr(0, colon);
    if (kind != "constant" && kind != "proportional" && kind != "general") {
        throw UsageError("unknown rate plan '" + kind +
                         "' (expected constant, proportional or general)");
    }
    plan.kind = kind;
    if (colon == std::string::npos) {
        return;
    }
    std::string const rest = text.substr(colon + 1);
    if (kind == "general") {
        plan.rates = to_doubles(rest, "general plan rates");
    } else {
        plan.lambda = to_double(rest, "plan rate");
    }
}

ServiceConfig parse_service_flag(std::string const& text)
{
    std::vector<std::string> const parts = split(text, ':');
    std::string const kind = parts.empty() ? std::string() : parts[0];
    auto expect = [&](std::size_t n, char const* form) {
        if (parts.size() != n) {
            throw UsageError("service '" + text + "' should look like " + form);
        }
    };
    ServiceConfig s;
    s.kind = kind;
    if (kind == "exp") {
        expect(2, "exp:RATE");
        s.rate = to_double(parts[1], "service rate");
    } else if (kind == "erlang") {
        expect(3, "erlang:SHAPE:RATE");
        s.shape = to_int(parts[1], "Erlang shape");
        s.rate = to_double(parts[2], "service rate");
    } else if (kind == "hyperexp") {
        expect(2, "hyperexp:W1@R1,W2@R2,...");
        for (std::string const& phase : split(parts[1], ',')) {
            std::size_t const at = phase.find('@');
            if (at == std::string::npos) {
                throw UsageError("hyperexponential phase '" + phase + "' should be WEIGHT@RATE");
            }
            s.weights.push_back(to_double(phase.substr(0, at), "phase weight"));
            s.rates.push_back(to_double(phase.substr(at + 1), "phase rate"));
        }
    } else if (kind == "det") {
        expect(2, "det:VALUE");
        s.value = to_double(parts[1], "deterministic service time");
    } else if (kind == "pareto") {
        expect(3, "pareto:INDEX:SCALE");
        s.index = to_double(parts[1], "Pareto index");
        s.scale = to_double(parts[2], "Pareto scale");
    } else {
        throw UsageError("unknown service kind '" + kind +
                         "' (expected exp, erlang, hyperexp, det or pareto)");
    }
    return s;
}

RunConfig RunConfig::from_text(std::string const& text)
{
    try {
        return from_node(YAML::Load(text));
    } catch (YAML::Exception const& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
}

RunConfig RunConfig::from_file(std::string const& path)
{
    try {
        return from_node(YAML::LoadFile(path));
    } catch (YAML::BadFile const&) {
        throw UsageError("cannot open config file '" + path + "'");
    } catch (YAML::Exception const& e) {
        throw UsageError("config '" + path + "': " + e.what());
    }
}

nlohmann::json RunConfig::to_json() const
{
    nlohmann::json plan = {{"kind", model.plan.kind}};
    if (model.plan.kind == "general") {
        plan["rates"] = model.plan.rates;
    } else {
        plan["lambda"] = model.plan.lambda;
    }
    ServiceConfig const& s = model.service;
    nlohmann::json service = {{"kind", s.kind}};
    if (s.kind == "exp") {
        service["rate"] = s.rate;
    } else if (s.kind == "erlang") {
        service["shape"] = s.shape;
        service["rate"] = s.rate;
    } else if (s.kind == "hyperexp") {
        service["weights"] = s.weights;
        service["rates"] = s.rates;
    } else if (s.kind == "det") {
        service["value"] = s.value;
    } else {
        service["index"] = s.index;
        service["scale"] = s.scale;
    }
    return {
        {"model", {{"k", model.k}, {"m", model.m}, {"plan", plan}, {"service", service}}},
        {"query",
         {{"gamma", query.gamma},
          {"z", query.z},
          {"alpha", query.alpha},
          {"t", query.t},
          {"j", query.j},
          {"l", query.l},
          {"p", query.p},
          {"r", query.r},
          {"tail", query.tail},
          {"order", query.order}}},
        {"execution",
         {{"seed", execution.seed},
          {"replications", execution.replications},
          {"threads", execution.threads},
          {"method", execution.method},
          {"nodes", execution.nodes},
          {"digits", execution.digits},
          {"cross_check", execution.cross_check},
          {"format", execution.format},
          {"output", execution.output}}},
    };
}

void RunConfig::normalize()
{
    // A general plan carries its pool size in the rate list.
    if (model.plan.kind == "general" && model.m == 0) {
        model.m = static_cast<int>(model.plan.rates.size());
    }
}

void RunConfig::validate() const
{
    if (model.k < 0 || model.m < 0) {
        throw UsageError("k and m must be non-negative");
    }
    if (model.plan.kind == "general" &&
        static_cast<int>(model.plan.rates.size()) != model.m) {
        throw UsageError("general plan lists " + std::to_string(model.plan.rates.size()) +
                         " rates but m = " + std::to_string(model.m));
    }
    if (!execution.format.empty() && execution.format != "csv" && execution.format != "json") {
        throw UsageError("format must be csv or json");
    }
    if (execution.method != "euler" && execution.method != "talbot") {
        throw UsageError("inversion method must be euler or talbot");
    }
    if (execution.replications < 1) {
        throw UsageError("replications must be at least 1");
    }
    if (execution.threads < 0) {
        throw UsageError("threads must be non-negative");
    }
    if (query.order < 0) {
        throw UsageError("moment order must be non-negative");
    }
}

RatePlan RunConfig::rate_plan() const
{
    if (model.plan.kind == "constant") {
        return RatePlan::constant(model.plan.lambda, model.m);
    }
    if (model.plan.kind == "proportional") {
        return RatePlan::proportional(model.plan.lambda, model.m);
    }
    if (model.plan.kind == "general") {
        return RatePlan::general(model.plan.rates);
    }
    throw UsageError("unknown rate plan '" + model.plan.kind + "'");
}

ServiceLaw RunConfig::service_law() const
{
    ServiceConfig const& s = model.service;
    if (s.kind == "exp") {
        return ServiceLaw::exponential(s.rate);
    }
    if (s.kind == "erlang") {
        return ServiceLaw::erlang(s.shape, s.rate);
    }
    if (s.kind == "hyperexp") {
        return ServiceLaw::hyperexponential(s.weights, s.rates);
    }
    if (s.kind == "det") {
        return ServiceLaw::deterministic(s.value);
    }
    if (s.kind == "pareto") {
        return ServiceLaw::pareto(s.index, s.scale);
    }
    throw UsageError("unknown service kind '" + s.kind + "'");
}

Model RunConfig::build_model() const
{
    return Model(model.k, rate_plan(), service_law());
}

InversionConfig RunConfig::inversion() const
{
    InversionConfig inv;
    inv.method = execution.method == "talbot" ? InversionMethod::talbot : InversionMethod::euler;
    inv.nodes = execution.nodes;
    inv.digits = execution.digits;
    inv.cross_check = execution.cross_check;
    inv.validate();
    return inv;
}

}  // namespace fcpool::cli
