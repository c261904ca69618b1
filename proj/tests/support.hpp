#pragma once

// Shared helpers for the unit and acceptance tests.

#include "hsgw/model_io.hpp"
#include "hsgw/offspring.hpp"
#include "hsgw/sampler.hpp"
#include "hsgw/tree.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <variant>
#include <vector>

namespace hsgw::test {

struct ChiSquare
{
    double statistic = 0;
    int dof = 0;
    double p_value = 1;
};

// Pearson test of observed counts against probabilities. Cells with expected count
// below 5 are pooled into one cell (a pooled cell that is still small is dropped).
template <class Key>
ChiSquare chi_square(const std::map<Key, std::int64_t>& observed, const std::map<Key, double>& expected,
                     std::int64_t total)
{
    ChiSquare r;
    double pooled_obs = 0, pooled_exp = 0;
    int cells = 0;
    auto add = [&](double o, double e) {
        r.statistic += (o - e) * (o - e) / e;
        ++cells;
    };
    for (const auto& [k, p] : expected) {
        const double e = p * double(total);
        const auto it = observed.find(k);
        const double o = it == observed.end() ? 0.0 : double(it->second);
        if (e < 5) {
            pooled_obs += o;
            pooled_exp += e;
        } else {
            add(o, e);
        }
    }
    // observations outside the support of `expected` go to the pooled cell
    for (const auto& [k, o] : observed)
        if (!expected.contains(k)) pooled_obs += double(o);
    if (pooled_exp >= 5)
        add(pooled_obs, pooled_exp);
    else if (pooled_obs > 0 && pooled_exp == 0)
        r.statistic = INFINITY;
    r.dof = std::max(1, cells - 1);
    r.p_value = std::isinf(r.statistic)
                    ? 0.0
                    : boost::math::cdf(boost::math::complement(boost::math::chi_squared(r.dof), r.statistic));
    return r;
}

template <class Key>
double total_variation(const std::map<Key, std::int64_t>& observed, const std::map<Key, double>& expected,
                       std::int64_t total)
{
    double tv = 0;
    for (const auto& [k, p] : expected) {
        const auto it = observed.find(k);
        tv += std::abs((it == observed.end() ? 0.0 : double(it->second) / double(total)) - p);
    }
    for (const auto& [k, o] : observed)
        if (!expected.contains(k)) tv += double(o) / double(total);
    return tv / 2;
}

// a mix of uniform plane trees, stable(1.5) and Cauchy GW trees, capped in size
inline std::vector<Tree> random_trees(int count, std::int64_t max_size, std::uint64_t seed)
{
    GwSampler geometric(make_geometric(), {.seed = seed});
    GwSampler stable(make_stable(1.5), {.seed = seed, .max_nodes = max_size, .stream_id = 1});
    GwSampler cauchy(build_model({.family = "log_power", .kappa = 1.0}),
                     {.seed = seed, .max_nodes = max_size, .stream_id = 2});
    std::vector<Tree> out;
    while (int(out.size()) < count) {
        switch (out.size() % 3) {
        case 0:
            out.push_back(geometric.sample_exact_size(1 + std::int64_t(geometric.rng().below(max_size))));
            break;
        case 1:
            if (auto r = stable.sample_gw(); std::holds_alternative<Tree>(r)) out.push_back(std::get<Tree>(std::move(r)));
            break;
        default:
            if (auto r = cauchy.sample_gw(); std::holds_alternative<Tree>(r)) out.push_back(std::get<Tree>(std::move(r)));
        }
    }
    return out;
}

} // namespace hsgw::test
