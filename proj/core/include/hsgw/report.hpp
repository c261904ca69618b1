#pragma once

#include "hsgw/model_io.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hsgw {

// Missing values (a statistic that does not apply to an experiment) are NaN;
// they serialize as null in JSON and as an empty CSV cell.
struct ReportRow
{
    std::int64_t n = 0;
    std::int64_t requested = 0;   // replicates asked for
    std::int64_t samples = 0;     // replicates that entered the statistics
    std::int64_t failed = 0;      // retry budget exhausted
    std::int64_t capped = 0;      // node cap reached; excluded from the statistics
    bool partial = false;         // samples < requested

    double mean_s = 0;
    double std_s = 0;
    double q05 = 0, q25 = 0, q50 = 0, q75 = 0, q95 = 0;   // quantiles of S

    double theory = 0;       // normaliser: S / theory -> 1
    double mean_ratio = 0;
    double ci_half = 0;      // 95% half-width of mean_ratio

    double mean_delta_b = 0;     // Delta / b_n
    double median_delta_b = 0;
    double p_delta_b = 0;        // P(Delta / b_n >= x), x from the gate thresholds
    double p_delta_b_se = 0;

    double acceptance_rate = 0;  // of the conditioning step, 1 when unconditioned

    // experiment-specific columns, in a fixed order
    std::vector<std::pair<std::string, double>> extras;

    double extra(std::string_view key) const;   // NaN if absent
};

struct GateResult
{
    std::string name;
    bool hard = true;   // hard gates decide the exit status
    bool passed = false;
    double value = 0;
    double lo = 0;      // accepted range for value
    double hi = 0;
    std::string detail;
};

struct ExperimentReport
{
    static constexpr int schema_version = 1;

    std::string experiment;   // theorem1, theorem2, theorem3, tail
    ModelSpec model;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::int64_t samples = 0;
    std::vector<ReportRow> rows;   // sorted by n
    std::vector<GateResult> gates;
    double wall_seconds = 0;       // JSON only, so the CSV stays reproducible

    bool hard_gates_passed() const;
    const GateResult* gate(std::string_view name) const;
};

// one line per row; header lists the fixed columns then the extras of the first row
void write_csv(std::ostream& out, const ExperimentReport& report);
std::string to_csv(const ExperimentReport& report);

std::string to_json(const ExperimentReport& report, int indent = 2);
ExperimentReport parse_report(std::string_view json_text);

void save_report(const ExperimentReport& report, const std::string& path);   // .csv or .json by extension

// gate summary, one line per gate
std::string format_gates(const ExperimentReport& report);

} // namespace hsgw
