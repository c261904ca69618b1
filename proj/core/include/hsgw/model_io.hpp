#pragma once

#include "hsgw/offspring.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hsgw {

// Serializable description of an offspring law; schema in docs/model_schema.md.
struct ModelSpec
{
    std::string family;                  // stable, binary, geometric, finite, log_power, exp_log_power, log_over_log_log
    std::optional<double> alpha;         // stable
    std::optional<double> kappa;         // log_power, exp_log_power
    std::optional<std::int64_t> n0;      // Cauchy families
    std::optional<double> c;             // Cauchy families
    std::vector<double> head_pmf;        // finite

    bool operator==(const ModelSpec&) const = default;
};

ModelSpec parse_model_spec(std::string_view json_text);
ModelSpec load_model_spec(const std::string& path);
std::string to_json(const ModelSpec& spec);

OffspringModel build_model(const ModelSpec& spec);
// spec with every default made explicit (n0, c resolved for Cauchy families)
ModelSpec resolved_spec(const ModelSpec& spec);

} // namespace hsgw
