#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ope/report.hpp"

namespace ope {

namespace {

// equality that treats nan==nan and matches serialized round-trips
bool same(double a, double b) {
    if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
    return a == b;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false, field_started = false;
    const auto end_field = [&] {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        row.push_back(field);
        field.clear();
        field_started = false;
    };
    const auto end_row = [&] {
        end_field();
        if (!(row.size() == 1 && row[0].empty())) rows.push_back(row);
        row.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            end_row();
        } else {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes) throw std::invalid_argument("csv: unterminated quoted field");
    if (field_started || !field.empty() || !row.empty()) end_row();
    return rows;
}

int parse_int(const std::string& s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("csv: bad integer '" + s + "'");
    return v;
}

// JSON has no Infinity literal; non-finite metric values travel as strings.
nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

double number_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_double(j.get<std::string>());
    return j.get<double>();
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("bad number '" + s + "'");
    return v;
}

bool ReportItem::operator==(const ReportItem& o) const {
    return id == o.id && r == o.r && n == o.n && mode == o.mode && same(psnr_db, o.psnr_db) &&
           same(time_ms, o.time_ms);
}

void RunReport::add_param(const std::string& key, const std::string& value) {
    params.emplace_back(key, value);
}
void RunReport::add_param(const std::string& key, double value) {
    params.emplace_back(key, format_double(value));
}
void RunReport::add_param(const std::string& key, int value) {
    params.emplace_back(key, std::to_string(value));
}

const std::string* RunReport::find_param(const std::string& key) const {
    for (const auto& [k, v] : params)
        if (k == key) return &v;
    return nullptr;
}

void RunReport::compute_aggregates() {
    double sum = 0.0;
    int count = 0;
    total_time_ms = 0.0;
    for (const auto& it : items) {
        total_time_ms += it.time_ms;
        if (!std::isnan(it.psnr_db)) {
            sum += it.psnr_db;
            ++count;
        }
    }
    mean_psnr_db = count > 0 ? sum / count : std::numeric_limits<double>::quiet_NaN();
}

std::string RunReport::to_csv() const {
    std::string out = "report," + csv_escape(command) + "," + (passed ? "true" : "false") + "\n";
    for (const auto& [k, v] : params)
        out += "param," + csv_escape(k) + "," + csv_escape(v) + "\n";
    for (const auto& it : items)
        out += "item," + csv_escape(it.id) + "," + std::to_string(it.r) + "," +
               std::to_string(it.n) + "," + csv_escape(it.mode) + "," + format_double(it.psnr_db) +
               "," + format_double(it.time_ms) + "\n";
    out += "aggregate," + format_double(mean_psnr_db) + "," + format_double(total_time_ms) + "\n";
    return out;
}

RunReport RunReport::from_csv(const std::string& text) {
    RunReport rep;
    bool saw_report = false;
    for (const auto& row : parse_csv(text)) {
        if (row.empty()) continue;
        const std::string& tag = row[0];
        if (tag == "report" && row.size() == 3) {
            rep.command = row[1];
            rep.passed = row[2] == "true";
            saw_report = true;
        } else if (tag == "param" && row.size() == 3) {
            rep.params.emplace_back(row[1], row[2]);
        } else if (tag == "item" && row.size() == 7) {
            rep.items.push_back({row[1], parse_int(row[2]), parse_int(row[3]), row[4],
                                 parse_double(row[5]), parse_double(row[6])});
        } else if (tag == "aggregate" && row.size() == 3) {
            rep.mean_psnr_db = parse_double(row[1]);
            rep.total_time_ms = parse_double(row[2]);
        } else {
            throw std::invalid_argument("csv: unrecognized row '" + tag + "'");
        }
    }
    if (!saw_report) throw std::invalid_argument("csv: missing report row");
    return rep;
}

std::string RunReport::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["passed"] = passed;
    j["params"] = nlohmann::json::array();
    for (const auto& [k, v] : params) j["params"].push_back({{"key", k}, {"value", v}});
    j["items"] = nlohmann::json::array();
    for (const auto& it : items)
        j["items"].push_back({{"id", it.id},
                              {"r", it.r},
                              {"n", it.n},
                              {"mode", it.mode},
                              {"psnr_db", json_number(it.psnr_db)},
                              {"time_ms", json_number(it.time_ms)}});
    j["aggregates"] = {{"mean_psnr_db", json_number(mean_psnr_db)},
                       {"total_time_ms", json_number(total_time_ms)}};
    return j.dump(2) + "\n";
}

RunReport RunReport::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    RunReport rep;
    rep.command = j.at("command").get<std::string>();
    rep.passed = j.at("passed").get<bool>();
    for (const auto& p : j.at("params"))
        rep.params.emplace_back(p.at("key").get<std::string>(), p.at("value").get<std::string>());
    for (const auto& it : j.at("items"))
        rep.items.push_back({it.at("id").get<std::string>(), it.at("r").get<int>(),
                             it.at("n").get<int>(), it.at("mode").get<std::string>(),
                             number_from_json(it.at("psnr_db")),
                             number_from_json(it.at("time_ms"))});
    rep.mean_psnr_db = number_from_json(j.at("aggregates").at("mean_psnr_db"));
    rep.total_time_ms = number_from_json(j.at("aggregates").at("total_time_ms"));
    return rep;
}

void RunReport::write(const std::string& format, const std::string& path) const {
    std::string text;
    if (format == "csv") {
        text = to_csv();
    } else if (format == "json") {
        text = to_json();
    } else {
        throw std::invalid_argument("unknown report format '" + format + "'");
    }
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

bool RunReport::operator==(const RunReport& o) const {
    return command == o.command && params == o.params && items == o.items &&
           same(mean_psnr_db, o.mean_psnr_db) && same(total_time_ms, o.total_time_ms) &&
           passed == o.passed;
}

}  // namespace ope
