#include "fcpool_cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace fcpool::cli {

namespace {

std::string quote(std::string const& field)
{
    if (field.find_first_of(",\"\r\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char const c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

struct CsvCell {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(std::string const& v) const { return quote(v); }
};

struct JsonCell {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(std::int64_t v) const { return v; }
    nlohmann::json operator()(double v) const
    {
        if (!std::isfinite(v)) {
            return format_number(v);
        }
        return std::strtod(format_number(v).c_str(), nullptr);
    }
    nlohmann::json operator()(std::string const& v) const { return v; }
};

}  // namespace

void Table::add(std::vector<Cell> row)
{
    if (row.size() != columns.size()) {
        throw std::logic_error("table row width does not match the header");
    }
    rows.push_back(std::move(row));
}

std::string format_number(double value)
{
    if (value == 0.0) {
        return "0";
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void write_csv(std::ostream& out, Table const& table)
{
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << quote(table.columns[c]);
    }
    out << "\r\n";
    for (auto const& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << std::visit(CsvCell{}, row[c]);
        }
        out << "\r\n";
    }
}

void write_json(std::ostream& out, Table const& table, nlohmann::json const& config)
{
    nlohmann::json rows = nlohmann::json::array();
    for (auto const& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            obj[table.columns[c]] = std::visit(JsonCell{}, row[c]);
        }
        rows.push_back(std::move(obj));
    }
    nlohmann::json const doc = {{"config", config}, {"rows", rows}};
    out << doc.dump(2) << "\n";
}

}  // namespace fcpool::cli
