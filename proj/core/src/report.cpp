#include "hsgw/report.hpp"

#include "hsgw/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace hsgw {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

ordered_json number_or_null(double x)
{
    if (std::isnan(x)) return nullptr;
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

double number_from(const json& j)
{
    if (j.is_null()) return nan;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw FormatError("report: unexpected string '" + s + "' for a number", 0);
    }
    return j.get<double>();
}

// fixed-format numbers so the CSV does not depend on locale or stream state
std::string cell(double x)
{
    if (std::isnan(x)) return "";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::setprecision(12) << x;
    return s.str();
}

struct Column
{
    const char* name;
    double ReportRow::*field;
};

constexpr Column stat_columns[] = {
    {"mean_s", &ReportRow::mean_s},
    {"std_s", &ReportRow::std_s},
    {"q05", &ReportRow::q05},
    {"q25", &ReportRow::q25},
    {"q50", &ReportRow::q50},
    {"q75", &ReportRow::q75},
    {"q95", &ReportRow::q95},
    {"theory", &ReportRow::theory},
    {"mean_ratio", &ReportRow::mean_ratio},
    {"ci_half", &ReportRow::ci_half},
    {"mean_delta_b", &ReportRow::mean_delta_b},
    {"median_delta_b", &ReportRow::median_delta_b},
    {"p_delta_b", &ReportRow::p_delta_b},
    {"p_delta_b_se", &ReportRow::p_delta_b_se},
    {"acceptance_rate", &ReportRow::acceptance_rate},
};

} // namespace

double ReportRow::extra(std::string_view key) const
{
    for (const auto& [k, v] : extras)
        if (k == key) return v;
    return nan;
}

bool ExperimentReport::hard_gates_passed() const
{
    for (const auto& g : gates)
        if (g.hard && !g.passed) return false;
    return true;
}

const GateResult* ExperimentReport::gate(std::string_view name) const
{
    for (const auto& g : gates)
        if (g.name == name) return &g;
    return nullptr;
}

void write_csv(std::ostream& out, const ExperimentReport& report)
{
    std::vector<std::string> extra_keys;
    if (!report.rows.empty())
        for (const auto& [k, v] : report.rows.front().extras) extra_keys.push_back(k);

    out << "experiment,n,requested,samples,failed,capped,partial";
    for (const auto& c : stat_columns) out << ',' << c.name;
    for (const auto& k : extra_keys) out << ',' << k;
    out << '\n';

    for (const auto& r : report.rows) {
        out << report.experiment << ',' << r.n << ',' << r.requested << ',' << r.samples << ',' << r.failed << ','
            << r.capped << ',' << (r.partial ? 1 : 0);
        for (const auto& c : stat_columns) out << ',' << cell(r.*(c.field));
        for (const auto& k : extra_keys) out << ',' << cell(r.extra(k));
        out << '\n';
    }
}

std::string to_csv(const ExperimentReport& report)
{
    std::ostringstream s;
    write_csv(s, report);
    return s.str();
}

std::string to_json(const ExperimentReport& report, int indent)
{
    ordered_json j;
    j["schema_version"] = ExperimentReport::schema_version;
    j["experiment"] = report.experiment;
    j["model"] = ordered_json::parse(to_json(report.model));
    j["seed"] = report.seed;
    j["threads"] = report.threads;
    j["samples"] = report.samples;
    j["wall_seconds"] = report.wall_seconds;

    auto& rows = j["rows"] = ordered_json::array();
    for (const auto& r : report.rows) {
        ordered_json o;
        o["n"] = r.n;
        o["requested"] = r.requested;
        o["samples"] = r.samples;
        o["failed"] = r.failed;
        o["capped"] = r.capped;
        o["partial"] = r.partial;
        for (const auto& c : stat_columns) o[c.name] = number_or_null(r.*(c.field));
        auto& ex = o["extras"] = ordered_json::object();
        for (const auto& [k, v] : r.extras) ex[k] = number_or_null(v);
        rows.push_back(std::move(o));
    }

    auto& gates = j["gates"] = ordered_json::array();
    for (const auto& g : report.gates) {
        gates.push_back({{"name", g.name},
                         {"hard", g.hard},
                         {"passed", g.passed},
                         {"value", number_or_null(g.value)},
                         {"lo", number_or_null(g.lo)},
                         {"hi", number_or_null(g.hi)},
                         {"detail", g.detail}});
    }
    j["hard_gates_passed"] = report.hard_gates_passed();
    return j.dump(indent);
}

ExperimentReport parse_report(std::string_view json_text)
{
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("report: invalid JSON: ") + e.what(), e.byte);
    }
    ExperimentReport r;
    try {
        const int version = j.at("schema_version").get<int>();
        if (version != ExperimentReport::schema_version)
            throw FormatError("report: unsupported schema_version " + std::to_string(version), 0);
        r.experiment = j.at("experiment").get<std::string>();
        r.model = parse_model_spec(j.at("model").dump());
        r.seed = j.at("seed").get<std::uint64_t>();
        r.threads = j.at("threads").get<unsigned>();
        r.samples = j.at("samples").get<std::int64_t>();
        r.wall_seconds = j.at("wall_seconds").get<double>();
        for (const auto& o : j.at("rows")) {
            ReportRow row;
            row.n = o.at("n").get<std::int64_t>();
            row.requested = o.at("requested").get<std::int64_t>();
            row.samples = o.at("samples").get<std::int64_t>();
            row.failed = o.at("failed").get<std::int64_t>();
            row.capped = o.at("capped").get<std::int64_t>();
            row.partial = o.at("partial").get<bool>();
            for (const auto& c : stat_columns) row.*(c.field) = number_from(o.at(c.name));
            for (const auto& [k, v] : o.at("extras").items()) row.extras.emplace_back(k, number_from(v));
            r.rows.push_back(std::move(row));
        }
        for (const auto& o : j.at("gates")) {
            GateResult g;
            g.name = o.at("name").get<std::string>();
            g.hard = o.at("hard").get<bool>();
            g.passed = o.at("passed").get<bool>();
            g.value = number_from(o.at("value"));
            g.lo = number_from(o.at("lo"));
            g.hi = number_from(o.at("hi"));
            g.detail = o.at("detail").get<std::string>();
            r.gates.push_back(std::move(g));
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("report: ") + e.what(), 0);
    }
    return r;
}

void save_report(const ExperimentReport& report, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("report: cannot write " + path);
    const bool json_out = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    if (json_out)
        out << to_json(report) << '\n';
    else
        write_csv(out, report);
    if (!out) throw ResourceError("report: write failed for " + path);
}

std::string format_gates(const ExperimentReport& report)
{
    std::ostringstream s;
    s.imbue(std::locale::classic());
    for (const auto& g : report.gates) {
        s << (g.passed ? "PASS" : "FAIL") << (g.hard ? "  " : "~ ") << g.name << "  value=" << cell(g.value) << " in ["
          << cell(g.lo) << ", " << cell(g.hi) << "]";
        if (!g.detail.empty()) s << "  " << g.detail;
        s << '\n';
    }
    return s.str();
}

} // namespace hsgw
