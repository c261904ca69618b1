#pragma once

#include "hsgw/offspring.hpp"
#include "hsgw/offspring_sampler.hpp"
#include "hsgw/rng.hpp"
#include "hsgw/summary.hpp"
#include "hsgw/tree.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace hsgw {

struct SamplerConfig
{
    std::uint64_t seed = 0;
    std::int64_t max_nodes = 100'000'000;
    std::uint64_t max_retries = 1'000'000'000;   // rejection attempts per draw
    std::uint64_t stream_id = 0;
};

// the walk ran past max_nodes before hitting -1
struct CapExceeded
{
    std::int64_t nodes = 0;
    int prefix_strahler = 0;
};

using GwResult = std::variant<Tree, CapExceeded>;

struct StreamResult
{
    TreeStats stats;
    bool capped = false;          // cap reached; stats describe the prefix
    bool stopped_early = false;   // S > stop_above was established before the tree finished
};

enum class ExactSizeStrategy { Automatic, Direct, CountFirst };

// Height-h slice of the size-biased tree: spine vertices U_0..U_h, with U_h kept as a leaf.
struct KestenSlice
{
    struct Level
    {
        std::int64_t k = 0;   // out-degree of U_n
        std::int64_t j = 0;   // U_{n+1} is the j-th child, 1 <= j <= k
        std::vector<Tree> left;    // children 1..j-1
        std::vector<Tree> right;   // children j+1..k
    };

    std::vector<Level> levels;

    std::size_t height() const { return levels.size(); }
    // Cut_{U_h} of the infinite tree; marked() is the index of U_h in it
    Tree to_tree() const;
    Tree::Index marked() const;
};

struct RetryStats
{
    std::uint64_t attempts = 0;
    std::uint64_t accepted = 0;
    double acceptance_rate() const { return attempts ? double(accepted) / double(attempts) : 0.0; }
};

// One sampling stream. Not thread-safe; give each thread its own instance (distinct stream_id).
class GwSampler
{
public:
    GwSampler(const OffspringModel& model, SamplerConfig cfg);

    GwResult sample_gw();
    StreamResult sample_gw_stats(std::optional<int> stop_above = std::nullopt);

    Tree sample_exact_size(std::int64_t n, ExactSizeStrategy strategy = ExactSizeStrategy::Automatic);
    TreeStats sample_exact_size_stats(std::int64_t n, ExactSizeStrategy strategy = ExactSizeStrategy::Automatic);
    // preorder degrees of an exact-size draw
    std::vector<std::int64_t> sample_exact_size_degrees(std::int64_t n,
                                                        ExactSizeStrategy strategy = ExactSizeStrategy::Automatic);

    Tree sample_at_least_size(std::int64_t n);
    StreamResult sample_at_least_size_stats(std::int64_t n);

    KestenSlice sample_kesten(std::int64_t h);
    // (k, j) per spine level, without grafting the side trees
    std::vector<std::pair<std::int64_t, std::int64_t>> sample_spine(std::int64_t h);

    const RetryStats& retry_stats() const { return retries_; }
    const SamplerConfig& config() const { return cfg_; }
    Rng& rng() { return rng_; }

    static constexpr std::int64_t direct_limit = 256;

private:
    struct CountFirst;

    void draw_jumps_direct(std::int64_t n);
    void draw_jumps_count_first(std::int64_t n);
    void rotate_accepted();
    std::pair<std::int64_t, std::int64_t> spine_step();
    bool gw_degrees(std::vector<std::int64_t>& out);

    std::shared_ptr<const OffspringModel> model_;
    SamplerConfig cfg_;
    Rng rng_;
    OffspringSampler offspring_;
    std::optional<OffspringSampler> size_biased_;
    std::shared_ptr<const CountFirst> count_first_;
    std::vector<std::int64_t> jumps_;   // reused buffer of out-degrees
    RetryStats retries_;
    std::int64_t feasible_for_ = 0;   // last n that passed the P(#tau = n) > 0 check
};

// one-shot conveniences; each builds a sampler from cfg
GwResult sample_gw(const OffspringModel& model, const SamplerConfig& cfg);
Tree sample_exact_size(const OffspringModel& model, std::int64_t n, const SamplerConfig& cfg);
Tree sample_at_least_size(const OffspringModel& model, std::int64_t n, const SamplerConfig& cfg);
KestenSlice sample_kesten(const OffspringModel& model, std::int64_t h, const SamplerConfig& cfg);

} // namespace hsgw
