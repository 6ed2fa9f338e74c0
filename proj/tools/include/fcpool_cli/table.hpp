#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace fcpool::cli {

/// Empty cell, integer, real or text.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

/// 12 significant digits; scientific below 1e-4 (printf %.12g).
std::string format_number(double value);

/// RFC 4180: CRLF line ends, fields quoted when they hold a comma, quote or line break.
void write_csv(std::ostream& out, Table const& table);

/// {"config": ..., "rows": [{column: value}]}; keys sorted, numbers rounded as in CSV.
void write_json(std::ostream& out, Table const& table, nlohmann::json const& config);

}  // namespace fcpool::cli
