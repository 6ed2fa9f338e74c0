#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fcpool/inversion.hpp"
#include "fcpool/model.hpp"

namespace fcpool::cli {

/// Raised for malformed input; maps to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PlanConfig {
    std::string kind = "constant";
    double lambda = 1.0;
    std::vector<double> rates;
};

struct ServiceConfig {
    std::string kind = "exp";
    double rate = 1.0;
    int shape = 1;
    std::vector<double> weights;
    std::vector<double> rates;
    double value = 1.0;
    double index = 1.5;
    double scale = 1.0;
};

struct ModelConfig {
    int k = 1;
    int m = 0;
    PlanConfig plan;
    ServiceConfig service;
};

struct QueryConfig {
    double gamma = 1.0;
    std::vector<double> z;
    std::vector<double> alpha;
    std::vector<double> t;
    std::vector<int> j;
    std::vector<int> l;
    std::vector<double> p;
    std::vector<double> r;
    std::vector<double> tail;
    int order = 2;
};

struct ExecutionConfig {
    std::uint64_t seed = 1;
    std::int64_t replications = 100000;
    int threads = 0;
    std::string method = "euler";
    int nodes = 32;
    double digits = 11.0;
    bool cross_check = false;
    /// csv or json; empty picks the subcommand default.
    std::string format;
    std::string output = "-";
};

/// Effective configuration of one run: model, query and execution blocks.
struct RunConfig {
    ModelConfig model;
    QueryConfig query;
    ExecutionConfig execution;

    /// Config file (YAML; JSON is accepted as a YAML subset). Unknown keys throw.
    static RunConfig from_file(std::string const& path);
    static RunConfig from_text(std::string const& text);

    nlohmann::json to_json() const;

    /// Fill values implied by others (m from a general plan's rate list).
    void normalize();
    /// Schema checks that do not need the numerical modules.
    void validate() const;

    RatePlan rate_plan() const;
    ServiceLaw service_law() const;
    Model build_model() const;
    InversionConfig inversion() const;
};

/// Parse "constant", "constant:2", "proportional:1.5" or "general:1,2,3".
void apply_plan_flag(PlanConfig& plan, std::string const& text);
/// Parse "exp:1", "erlang:2:3", "hyperexp:0.4@1,0.6@3", "det:1", "pareto:1.5:1".
ServiceConfig parse_service_flag(std::string const& text);

}  // namespace fcpool::cli
