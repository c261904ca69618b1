#include "support.hpp"

#include "hsgw/error.hpp"
#include "hsgw/exact.hpp"
#include "hsgw/experiments.hpp"
#include "hsgw/generating.hpp"
#include "hsgw/model_io.hpp"
#include "hsgw/report.hpp"
#include "hsgw/sampler.hpp"

#include <doctest.h>

#include <cmath>

using namespace hsgw;

namespace {

const ModelSpec geometric{.family = "geometric"};
const ModelSpec log_power{.family = "log_power", .kappa = 1.0};

} // namespace

TEST_SUITE("experiments")
{
    TEST_CASE("rows are sorted by n and carry counts and intervals")
    {
        const auto rep = run_theorem1(geometric, {256, 16, 64, 16}, 60, {.seed = 3});
        CHECK(rep.experiment == "theorem1");
        REQUIRE(rep.rows.size() == 3);
        CHECK(rep.rows[0].n == 16);
        CHECK(rep.rows[1].n == 64);
        CHECK(rep.rows[2].n == 256);
        for (const auto& row : rep.rows) {
            CHECK(row.samples == 60);
            CHECK(row.requested == 60);
            CHECK(!row.partial);
            CHECK(row.ci_half > 0);
            CHECK(row.ci_half == doctest::Approx(1.959963984540054 * row.std_s / row.theory / std::sqrt(60.0)));
            CHECK(row.theory == doctest::Approx(std::log(double(row.n)) / std::log(2.0) / 2));
            CHECK(row.q05 <= row.q50);
            CHECK(row.q50 <= row.q95);
            CHECK(std::isnan(row.mean_delta_b));
            CHECK(row.acceptance_rate == doctest::Approx(row.extra("exact_acceptance")).epsilon(0.5));
        }
    }

    TEST_CASE("results do not depend on the thread count")
    {
        ExperimentConfig one{.seed = 9, .threads = 1, .chunk = 7};
        ExperimentConfig four = one;
        four.threads = 4;
        CHECK(to_csv(run_theorem1(geometric, {50, 200}, 40, one)) == to_csv(run_theorem1(geometric, {50, 200}, 40, four)));
        CHECK(to_csv(run_theorem2(log_power, {100, 300}, 40, one)) ==
              to_csv(run_theorem2(log_power, {100, 300}, 40, four)));
        TailConfig tail{.table_size = 100, .upsilon_ns = {100}};
        CHECK(to_csv(run_tail_experiment({.family = "binary"}, 2000, one, tail)) ==
              to_csv(run_tail_experiment({.family = "binary"}, 2000, four, tail)));
        ExperimentConfig other = one;
        other.seed = 10;
        CHECK(to_csv(run_theorem1(geometric, {50, 200}, 40, one)) != to_csv(run_theorem1(geometric, {50, 200}, 40, other)));
    }

    TEST_CASE("a real report round-trips through JSON")
    {
        const auto rep = run_theorem3(log_power, {50, 100}, 30, {.seed = 4});
        const auto back = parse_report(to_json(rep));
        CHECK(to_json(back) == to_json(rep));
        CHECK(to_csv(back) == to_csv(rep));
        CHECK(back.model == resolved_spec(log_power));
    }

    TEST_CASE("exact-size Cauchy draws at n = 7 follow the enumeration law")
    {
        const auto m = build_model(log_power);
        const auto law = conditional_strahler_law(m, 7);
        GwSampler s(m, {.seed = 5});
        const std::int64_t N = 100'000;
        std::map<int, std::int64_t> observed;
        for (std::int64_t i = 0; i < N; ++i) ++observed[s.sample_exact_size_stats(7).strahler];
        CHECK(hsgw::test::chi_square(observed, law, N).p_value > 0.001);

        // the same draws through the experiment harness: mean S against the exact mean
        double exact_mean = 0;
        for (auto [v, p] : law) exact_mean += v * p;
        const auto rep = run_theorem3(log_power, {7}, 20'000, {.seed = 6});
        const auto& row = rep.rows.front();
        CHECK(std::abs(row.mean_s - exact_mean) <= 3 * row.std_s / std::sqrt(double(row.samples)));
    }

    TEST_CASE("attempt budget shrinks exact-size rows and marks them partial")
    {
        ExperimentConfig cfg{.seed = 7};
        cfg.attempt_budget = 2000;
        const auto rep = run_theorem1(geometric, {9, 2001}, 100, cfg);
        const auto& small = rep.rows[0];
        const auto& large = rep.rows[1];
        // P(W_9 = -1) is large enough for the full count, P(W_2001 = -1) is not
        CHECK(!small.partial);
        CHECK(small.samples == 100);
        CHECK(large.partial);
        const double p = walk_point_mass(build_model(geometric), 2001, 1).probability;
        CHECK(large.requested == 100);
        CHECK(large.samples == std::max<std::int64_t>(1, std::int64_t(std::floor(2000 * p))));
    }

    TEST_CASE("unsuitable models and sizes are rejected")
    {
        CHECK_THROWS_AS(run_theorem1(log_power, {100}, 10, {}), ParameterError);
        CHECK_THROWS_AS(run_theorem2(geometric, {100}, 10, {}), ParameterError);
        CHECK_THROWS_AS(run_theorem3({.family = "stable", .alpha = 1.5}, {100}, 10, {}), ParameterError);
        CHECK_THROWS_AS(run_theorem1({.family = "binary"}, {100}, 10, {}), ConditioningError);
        CHECK_THROWS_AS(run_theorem1(geometric, {}, 10, {}), ParameterError);
        CHECK_THROWS_AS(run_theorem1(geometric, {100}, 0, {}), ParameterError);
    }

    TEST_CASE("theorem1 experiment on uniform plane trees")
    {
        const auto rep = run_theorem1(geometric, {64, 256, 1024}, 300, {.seed = 8});
        const auto* band = rep.gate("ratio_band");
        REQUIRE(band != nullptr);
        CHECK(band->hard);
        // log_4 n for n = 4^k
        for (const auto& row : rep.rows) CHECK(std::abs(row.mean_s - std::log(double(row.n)) / std::log(4.0)) <= 1.0);
        REQUIRE(rep.gate("catalan_n256") != nullptr);
        CHECK(rep.gate("catalan_n256")->passed);
        REQUIRE(rep.gate("mean_s_increasing") != nullptr);
        CHECK(!rep.gate("mean_s_increasing")->hard);
        CHECK(rep.rows.back().extra("p_far") >= 0);
    }

    TEST_CASE("Cauchy experiments record Delta / b_n and Upsilon(1 / b_n)")
    {
        const auto m = build_model(log_power);
        const GeneratingOracle o(m);
        const auto rep = run_theorem2(log_power, {300}, 200, {.seed = 11});
        const auto& row = rep.rows.front();
        const double b = row.extra("b_n");
        CHECK(b > 1);
        CHECK(row.theory == doctest::Approx(o.upsilon(1 / b)));
        CHECK(row.mean_delta_b > 0);
        CHECK(row.p_delta_b_se > 0);
        CHECK(row.acceptance_rate < 1);
        for (const char* g : {"trend", "ratio_band", "delta_tail"}) CHECK(rep.gate(g) != nullptr);
        const auto rep3 = run_theorem3(log_power, {300}, 50, {.seed = 12});
        CHECK(rep3.gate("delta_median") != nullptr);
        CHECK(rep3.rows.front().median_delta_b > 0);
    }

    TEST_CASE("tail experiment on the binary law")
    {
        TailConfig tail;
        tail.table_size = 400;
        tail.upsilon_ns = {100, 200, 400};
        const auto rep = run_tail_experiment({.family = "binary"}, 100'000, {.seed = 13}, tail);
        CHECK(rep.experiment == "tail");
        INFO(format_gates(rep));
        CHECK(rep.hard_gates_passed());
        for (int n : {0, 1, 2, 3}) CHECK(rep.gate("tail_q" + std::to_string(n)) != nullptr);
        // Upsilon(q_n) / n for a constant Lambda is (n + 1) / n
        for (const auto& row : rep.rows)
            if (!std::isnan(row.extra("upsilon_ratio")))
                CHECK(row.extra("upsilon_ratio") == doctest::Approx(double(row.n + 1) / double(row.n)).epsilon(1e-9));
    }

    TEST_CASE("tail experiment on a stable law")
    {
        TailConfig tail;
        tail.table_size = 300;
        tail.upsilon_ns = {100, 300};
        const auto rep = run_tail_experiment({.family = "stable", .alpha = 1.5}, 50'000, {.seed = 14}, tail);
        INFO(format_gates(rep));
        CHECK(rep.hard_gates_passed());
        REQUIRE(rep.gate("degree_bound_m1_n8") != nullptr);
    }
}
