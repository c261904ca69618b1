#include "hsgw/model_io.hpp"

#include "hsgw/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace hsgw {

namespace {

using nlohmann::json;

const char* const families[] = {"stable", "binary", "geometric", "finite", "log_power", "exp_log_power",
                                "log_over_log_log"};

bool is_cauchy(const std::string& f) { return f == "log_power" || f == "exp_log_power" || f == "log_over_log_log"; }

SlowlyVarying slow_of(const ModelSpec& spec)
{
    if (spec.family == "log_over_log_log") return SlowlyVarying::log_over_log_log();
    if (!spec.kappa) throw ParameterError("model spec: family " + spec.family + " needs kappa");
    if (spec.family == "log_power") return SlowlyVarying::log_power(*spec.kappa);
    return SlowlyVarying::exp_log_power(*spec.kappa);
}

} // namespace

ModelSpec parse_model_spec(std::string_view json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("model spec: invalid JSON: ") + e.what(), e.byte);
    }
    if (!j.is_object()) throw FormatError("model spec: top level must be an object", 0);
    ModelSpec s;
    try {
        s.family = j.at("family").get<std::string>();
        if (j.contains("alpha")) s.alpha = j["alpha"].get<double>();
        if (j.contains("kappa")) s.kappa = j["kappa"].get<double>();
        if (j.contains("n0")) s.n0 = j["n0"].get<std::int64_t>();
        if (j.contains("c")) s.c = j["c"].get<double>();
        if (j.contains("head_pmf")) s.head_pmf = j["head_pmf"].get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ParameterError(std::string("model spec: ") + e.what());
    }
    bool known = false;
    for (const char* f : families) known = known || s.family == f;
    if (!known) throw ParameterError("model spec: unknown family '" + s.family + "'");
    return s;
}

ModelSpec load_model_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParameterError("model spec: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model_spec(ss.str());
}

std::string to_json(const ModelSpec& spec)
{
    json j;
    j["family"] = spec.family;
    if (spec.alpha) j["alpha"] = *spec.alpha;
    if (spec.kappa) j["kappa"] = *spec.kappa;
    if (spec.n0) j["n0"] = *spec.n0;
    if (spec.c) j["c"] = *spec.c;
    if (!spec.head_pmf.empty()) j["head_pmf"] = spec.head_pmf;
    return j.dump(2);
}

ModelSpec resolved_spec(const ModelSpec& spec)
{
    ModelSpec r = spec;
    if (is_cauchy(spec.family)) {
        const auto l = slow_of(spec);
        if (!r.n0) r.n0 = default_cauchy_cutoff(l);
        if (!r.c) r.c = default_cauchy_scale(l, *r.n0);
    }
    if (spec.family == "binary") r.alpha = 2.0;
    return r;
}

OffspringModel build_model(const ModelSpec& spec)
{
    const auto& f = spec.family;
    if (f == "stable") {
        if (!spec.alpha) throw ParameterError("model spec: stable needs alpha");
        return make_stable(*spec.alpha);
    }
    if (f == "binary") return make_finite({0.5, 0.0, 0.5}, "binary");
    if (f == "geometric") return make_geometric();
    if (f == "finite") return make_finite(spec.head_pmf);
    if (is_cauchy(f)) {
        const auto r = resolved_spec(spec);
        return make_cauchy(slow_of(r), *r.n0, *r.c);
    }
    throw ParameterError("model spec: unknown family '" + f + "'");
}

} // namespace hsgw
