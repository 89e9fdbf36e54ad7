#pragma once

// Structured experiment output: one report per command run, serializable to
// CSV and JSON such that re-parsing yields identical values.

#include <string>
#include <utility>
#include <vector>

namespace ope {

struct ReportItem {
    std::string id;       // image id or synthetic item label
    int r = 0;            // downscale factor (0 when not applicable)
    int n = 0;            // max frequency
    std::string mode;     // ensemble mode or variant label
    double psnr_db = 0.0; // may be +inf (identical images) or nan (no metric)
    double time_ms = 0.0;

    bool operator==(const ReportItem& o) const;
};

struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<ReportItem> items;
    double mean_psnr_db = 0.0;
    double total_time_ms = 0.0;
    bool passed = true;

    void add_param(const std::string& key, const std::string& value);
    void add_param(const std::string& key, double value);
    void add_param(const std::string& key, int value);
    [[nodiscard]] const std::string* find_param(const std::string& key) const;

    // mean over items with a PSNR value (nan items excluded), total over all
    void compute_aggregates();

    [[nodiscard]] std::string to_csv() const;
    [[nodiscard]] std::string to_json() const;
    static RunReport from_csv(const std::string& text);
    static RunReport from_json(const std::string& text);

    // Writes CSV or JSON by format name ("csv" | "json"); path "-" -> stdout.
    void write(const std::string& format, const std::string& path) const;

    bool operator==(const RunReport& o) const;
};

// Shortest decimal form that parses back to the identical binary64 value;
// non-finite values render as "inf"/"-inf"/"nan".
std::string format_double(double v);
double parse_double(const std::string& s);

}  // namespace ope
