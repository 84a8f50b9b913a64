#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "text_util.hpp"
#include "udcim/errors.hpp"
#include "udcim/experiment.hpp"

namespace udcim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const char* status_name(RunRow::Status s) {
    switch (s) {
    case RunRow::Status::Ok: return "ok";
    case RunRow::Status::Error: return "error";
    case RunRow::Status::CapExceeded: return "cap-exceeded";
    }
    return "?";
}

RunRow::Status parse_status(const std::string& s) {
    if (s == "ok") return RunRow::Status::Ok;
    if (s == "error") return RunRow::Status::Error;
    if (s == "cap-exceeded") return RunRow::Status::CapExceeded;
    throw ParseError(0, "unknown row status '" + s + "'");
}

ordered_json sigma_value(double v, bool averaged) {
    if (averaged) return v;
    return static_cast<std::int64_t>(std::llround(v));
}

// Integers for deterministic rows; averaged values always carry a decimal point.
std::string sigma_text(double v, bool averaged) {
    if (!averaged) return std::to_string(std::llround(v));
    std::string s = detail::format_double(v);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

std::string millis_text(double seconds) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", seconds);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string to_json(const RunReport& r) {
    ordered_json doc;
    doc["tool_version"] = r.tool_version;
    doc["dataset"] = r.dataset;
    doc["n"] = r.n;
    doc["m"] = r.m;
    doc["weights"] = r.weights;
    doc["tendencies"] = r.tendencies;
    doc["seed_a"] = r.seed_a;
    doc["seeds_A"] = r.seeds_a;
    doc["theta1"] = r.theta1;
    doc["theta2"] = r.theta2;
    doc["k"] = r.k;
    doc["rng_seed"] = r.rng_seed;
    doc["communities"] = r.communities;
    doc["louvain_seconds"] = r.louvain_seconds;
    doc["pagerank_seconds"] = r.pagerank_seconds;
    ordered_json rows = ordered_json::array();
    for (const RunRow& row : r.rows) {
        ordered_json j;
        j["algorithm"] = to_string(row.algorithm);
        j["status"] = status_name(row.status);
        if (!row.error.empty()) j["error"] = row.error;
        j["repetitions"] = row.repetitions;
        j["rng_seed"] = row.rng_seed;
        j["averaged"] = row.averaged;
        j["sigma_A"] = sigma_value(row.sigma_a, row.averaged);
        j["sigma_B"] = sigma_value(row.sigma_b, row.averaged);
        j["sigma_B_non_seed"] = sigma_value(row.sigma_b_non_seed, row.averaged);
        j["wall_time_seconds"] = row.wall_time_seconds;
        j["seeds_B"] = row.seeds_b;
        j["short_set"] = row.short_set;
        rows.push_back(std::move(j));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string to_csv(const RunReport& r) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const RunRow& row : r.rows) {
        out << csv_field(r.dataset) << ',' << r.n << ',' << r.m << ',' << to_string(row.algorithm) << ','
            << status_name(row.status) << ',' << row.repetitions << ',' << row.rng_seed << ',' << r.k << ','
            << detail::format_double(r.theta1) << ',' << detail::format_double(r.theta2) << ',';
        if (row.status == RunRow::Status::Ok) {
            out << sigma_text(row.sigma_a, row.averaged) << ',' << sigma_text(row.sigma_b, row.averaged) << ','
                << sigma_text(row.sigma_b_non_seed, row.averaged) << ',' << millis_text(row.wall_time_seconds);
        } else {
            out << ",,,";
        }
        out << ',' << csv_field(row.error) << '\n';
    }
    return out.str();
}

} // namespace

ReportFormat parse_report_format(std::string_view text) {
    if (text == "json") return ReportFormat::Json;
    if (text == "csv") return ReportFormat::Csv;
    throw ConfigError("unknown report format '" + std::string(text) + "'");
}

std::string emit_report(const RunReport& report, ReportFormat format) {
    return format == ReportFormat::Json ? to_json(report) : to_csv(report);
}

RunReport parse_report_json(std::string_view text) {
    try {
        const json doc = json::parse(text);
        RunReport r;
        r.tool_version = doc.at("tool_version").get<std::string>();
        r.dataset = doc.at("dataset").get<std::string>();
        r.n = doc.at("n").get<std::size_t>();
        r.m = doc.at("m").get<std::size_t>();
        r.weights = doc.at("weights").get<std::string>();
        r.tendencies = doc.at("tendencies").get<std::string>();
        r.seed_a = doc.at("seed_a").get<std::string>();
        r.seeds_a = doc.at("seeds_A").get<std::vector<std::string>>();
        r.theta1 = doc.at("theta1").get<double>();
        r.theta2 = doc.at("theta2").get<double>();
        r.k = doc.at("k").get<std::size_t>();
        r.rng_seed = doc.at("rng_seed").get<std::uint64_t>();
        r.communities = doc.at("communities").get<std::size_t>();
        r.louvain_seconds = doc.at("louvain_seconds").get<double>();
        r.pagerank_seconds = doc.at("pagerank_seconds").get<double>();
        for (const json& j : doc.at("rows")) {
            RunRow row;
            row.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
            row.status = parse_status(j.at("status").get<std::string>());
            if (j.contains("error")) row.error = j.at("error").get<std::string>();
            row.repetitions = j.at("repetitions").get<std::size_t>();
            row.rng_seed = j.at("rng_seed").get<std::uint64_t>();
            row.averaged = j.at("averaged").get<bool>();
            row.sigma_a = j.at("sigma_A").get<double>();
            row.sigma_b = j.at("sigma_B").get<double>();
            row.sigma_b_non_seed = j.at("sigma_B_non_seed").get<double>();
            row.wall_time_seconds = j.at("wall_time_seconds").get<double>();
            row.seeds_b = j.at("seeds_B").get<std::vector<std::string>>();
            row.short_set = j.at("short_set").get<bool>();
            r.rows.push_back(std::move(row));
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("malformed report: ") + e.what());
    } catch (const ConfigError& e) {
        throw ParseError(0, std::string("malformed report: ") + e.what());
    }
}

} // namespace udcim
