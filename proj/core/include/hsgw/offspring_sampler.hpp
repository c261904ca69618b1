#pragma once

#include "hsgw/offspring.hpp"
#include "hsgw/rng.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace hsgw {

// Vose alias table over a finite list of weights.
class AliasTable
{
public:
    AliasTable() = default;
    explicit AliasTable(std::span<const double> weights);

    std::size_t size() const { return prob_.size(); }
    std::size_t operator()(Rng& rng) const
    {
        const auto i = static_cast<std::size_t>(rng.below(prob_.size()));
        return rng.uniform() < prob_[i] ? i : alias_[i];
    }

private:
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
};

enum class OffspringBias { None, Size };

// Draws from mu (or the size-biased k mu(k)): head via alias table,
// tail beyond the head by inversion of the analytic tail sums.
class OffspringSampler
{
public:
    explicit OffspringSampler(const OffspringModel& model, OffspringBias bias = OffspringBias::None);

    std::int64_t operator()(Rng& rng) const;
    // draw conditioned on k > head_max()
    std::int64_t sample_tail(Rng& rng) const;

    double tail_probability() const { return tail_probability_; }
    OffspringBias bias() const { return bias_; }
    const OffspringModel& model() const { return *model_; }

private:
    double log_tail(std::int64_t k) const;

    std::shared_ptr<const OffspringModel> model_;
    OffspringBias bias_;
    AliasTable table_;   // head categories plus one tail category at index K+1
    double tail_probability_ = 0;
    double log_tail_start_ = 0;
};

} // namespace hsgw
