#pragma once

#include "hsgw/model_io.hpp"
#include "hsgw/report.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace hsgw {

// Pre-registered acceptance thresholds; serialized into every report through the gate bounds.
struct GateThresholds
{
    // theorem1: the 95% CI of the mean ratio at the largest n must sit inside this band
    double ratio_lo = 0.85;
    double ratio_hi = 1.15;
    double far_from_one = 0.15;   // reported P(|ratio - 1| > far_from_one)
    double catalan_slack = 1.0;   // geometric law: |mean S - log_4 n| at n = 4^k

    // theorem2 / theorem3 at the largest n
    double cauchy_ratio_lo = 0.6;
    double cauchy_ratio_hi = 1.4;
    double delta_tail_x = 2.0;    // P(Delta / b_n >= x) against 1/x
    double delta_median_lo = 0.5;
    double delta_median_hi = 2.0;

    // tail: |Upsilon(q_n)/n - 1| at the largest n of the series
    double upsilon_band = 0.25;

    // Monte Carlo slack in standard errors
    double sigmas = 3.0;
};

struct ExperimentConfig
{
    std::uint64_t seed = 1;
    unsigned threads = 1;
    // replicates per task; results depend on this but never on the thread count
    std::int64_t chunk = 25;
    std::int64_t max_nodes = 100'000'000;
    std::uint64_t max_retries = 1'000'000'000;   // per draw
    // exact-size rows: cap on the expected number of rejection attempts per row, 0 = none;
    // rows that would exceed it run fewer replicates and are marked partial
    double attempt_budget = 0;
    GateThresholds gates;
};

struct TailConfig
{
    std::int64_t table_size = 1000;                 // N of the exact tail table
    std::vector<int> levels{0, 1, 2, 3};            // Monte Carlo P(S > n) against the table
    std::vector<std::int64_t> upsilon_ns{100, 316, 1000};
    std::vector<int> size_bound_levels{1, 2};       // psi'(q_{n-1}) E[#tau; S <= n] <= 2
    std::vector<std::pair<int, std::int64_t>> height_bound{{1, 40}, {2, 60}};   // (m, n)
    std::vector<std::pair<int, std::int64_t>> degree_bound{{1, 8}, {2, 16}};    // (m, n)
    std::vector<std::pair<int, int>> z_law{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1},
                                           {1, 2}, {2, 0}, {2, 1}, {2, 2}};     // (n, m)
};

// alpha S / log_{alpha/(alpha-1)} n under exact-size conditioning
ExperimentReport run_theorem1(const ModelSpec& model, const std::vector<std::int64_t>& ns, std::int64_t samples,
                              const ExperimentConfig& cfg);
// S / Upsilon(1/b_n) under #tau >= n
ExperimentReport run_theorem2(const ModelSpec& model, const std::vector<std::int64_t>& ns, std::int64_t samples,
                              const ExperimentConfig& cfg);
// S / Upsilon(1/b_n) under #tau = n
ExperimentReport run_theorem3(const ModelSpec& model, const std::vector<std::int64_t>& ns, std::int64_t samples,
                              const ExperimentConfig& cfg);
// exact tail table against unconditioned Monte Carlo, one-sided bounds, Z-law and Upsilon(q_n)/n
ExperimentReport run_tail_experiment(const ModelSpec& model, std::int64_t samples, const ExperimentConfig& cfg,
                                     const TailConfig& tail = {});

} // namespace hsgw
