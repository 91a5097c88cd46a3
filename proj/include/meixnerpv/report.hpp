#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "meixnerpv/errors.hpp"
#include "meixnerpv/verify.hpp"

namespace meixnerpv {

// Flat tabular report with key/value metadata; renders to CSV (metadata as
// leading comment lines) or JSON (schema meixner-pv/1, numeric cells kept as
// decimal strings so no precision is lost in transport).
struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

inline std::string csv_escape(const std::string& s) {
    bool needs_quotes = s.find_first_of(",\"\n") != std::string::npos;
    if (!needs_quotes) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

inline std::string to_csv(const Report& r) {
    std::string out = "# meixner-pv " + r.command + "\n";
    for (const auto& [k, v] : r.meta)
        out += "# " + k + "=" + v + "\n";
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        out += (i ? "," : "") + csv_escape(r.columns[i]);
    out += "\n";
    for (const auto& row : r.rows) {
        if (row.size() != r.columns.size())
            throw Error("report row width mismatch");
        for (std::size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + csv_escape(row[i]);
        out += "\n";
    }
    return out;
}

inline std::string to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["schema"] = "meixner-pv/1";
    j["command"] = r.command;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.meta) meta[k] = v;
    j["meta"] = meta;
    j["columns"] = r.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        if (row.size() != r.columns.size())
            throw Error("report row width mismatch");
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            obj[r.columns[i]] = row[i];
        rows.push_back(obj);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

inline Report checks_to_report(const std::vector<CheckResult>& results) {
    Report r;
    r.command = "verify";
    r.columns = {"suite", "check", "status", "max_residual", "tolerance", "details"};
    for (const auto& c : results)
        r.rows.push_back({c.suite, c.name, check_status_name(c.status),
                          c.max_residual, c.tolerance, c.details});
    return r;
}

} // namespace meixnerpv
