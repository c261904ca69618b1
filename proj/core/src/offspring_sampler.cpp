#include "hsgw/offspring_sampler.hpp"

#include "hsgw/error.hpp"

#include <cmath>
#include <limits>

namespace hsgw {

AliasTable::AliasTable(std::span<const double> weights)
{
    const std::size_t n = weights.size();
    if (n == 0 || n > std::numeric_limits<std::uint32_t>::max()) throw ParameterError("AliasTable: bad size");
    double total = 0;
    for (double w : weights) {
        if (!(w >= 0)) throw ParameterError("AliasTable: negative weight");
        total += w;
    }
    if (!(total > 0)) throw ParameterError("AliasTable: zero total weight");

    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < n; ++i) {
        scaled[i] = weights[i] * static_cast<double>(n) / total;
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
        const auto s = small.back();
        small.pop_back();
        const auto l = large.back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (auto i : large) prob_[i] = 1.0, alias_[i] = i;
    for (auto i : small) prob_[i] = 1.0, alias_[i] = i;
}

OffspringSampler::OffspringSampler(const OffspringModel& model, OffspringBias bias)
    : model_(std::make_shared<const OffspringModel>(model)), bias_(bias)
{
    const auto head = model_->head();
    std::vector<double> w(head.begin(), head.end());
    if (bias_ == OffspringBias::Size)
        for (std::size_t k = 0; k < w.size(); ++k) w[k] *= static_cast<double>(k);
    const bool has_tail = model_->tail_kind() != TailKind::None;
    if (has_tail) {
        const std::int64_t k1 = model_->head_max() + 1;
        tail_probability_ = bias_ == OffspringBias::Size ? model_->tail_mean(k1) : model_->tail_mass(k1);
        w.push_back(tail_probability_);
        log_tail_start_ = log_tail(k1);
    }
    table_ = AliasTable(w);
}

double OffspringSampler::log_tail(std::int64_t k) const
{
    return std::log(bias_ == OffspringBias::Size ? model_->tail_mean(k) : model_->tail_mass(k));
}

std::int64_t OffspringSampler::sample_tail(Rng& rng) const
{
    // smallest k > K with G(k+1) <= u G(K+1), searched on log G
    const double target = std::log(rng.uniform_pos()) + log_tail_start_;
    std::int64_t lo = model_->head_max() + 1;   // G(lo) > target side
    std::int64_t step = 1;
    std::int64_t hi = lo + step;
    constexpr std::int64_t limit = std::int64_t{1} << 62;
    while (log_tail(hi) > target) {
        lo = hi;
        if (hi > limit / 2) return hi;
        step *= 2;
        hi = lo + step;
    }
    // log G(lo) > target >= log G(hi): answer k = hi - 1 after narrowing to hi = lo + 1
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (log_tail(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::int64_t OffspringSampler::operator()(Rng& rng) const
{
    const auto i = static_cast<std::int64_t>(table_(rng));
    if (i > model_->head_max()) return sample_tail(rng);
    return i;
}

} // namespace hsgw
