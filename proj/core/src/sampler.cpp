#include "hsgw/sampler.hpp"

#include "hsgw/error.hpp"
#include "hsgw/lukasiewicz.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <tuple>

namespace hsgw {

namespace {

constexpr std::int64_t individual_switch = 8;

std::int64_t support_gcd(const OffspringModel& m)
{
    if (m.tail_kind() != TailKind::None) return 1;
    std::int64_t g = 0;
    const auto head = m.head();
    for (std::size_t k = 1; k < head.size(); ++k)
        if (head[k] > 0) g = std::gcd(g, static_cast<std::int64_t>(k));
    return g == 0 ? 1 : g;
}

// P(#tau = n) > 0 iff n - 1 is a sum of at most n positive values of the support
bool size_feasible(const OffspringModel& m, std::int64_t n)
{
    if (n == 1) return true;
    if ((n - 1) % support_gcd(m) != 0) return false;
    if (n > 1024) return true;
    const auto target = static_cast<std::size_t>(n - 1);
    std::vector<std::int64_t> parts(target + 1, std::numeric_limits<std::int64_t>::max());
    parts[0] = 0;
    for (std::size_t s = 1; s <= target; ++s)
        for (std::size_t k = 1; k <= s; ++k)
            if (m.pmf(static_cast<std::int64_t>(k)) > 0 && parts[s - k] != std::numeric_limits<std::int64_t>::max())
                parts[s] = std::min(parts[s], parts[s - k] + 1);
    return parts[target] <= n;
}

} // namespace

// categories of mu sorted by decreasing mass; value -1 stands for "beyond the head"
struct GwSampler::CountFirst
{
    std::vector<std::int64_t> value;
    std::vector<double> mass;
    std::vector<double> suffix;   // suffix[i] = sum_{j >= i} mass[j], suffix[size] = 0

    explicit CountFirst(const OffspringModel& m)
    {
        const auto head = m.head();
        std::vector<std::pair<double, std::int64_t>> cats;
        for (std::size_t k = 0; k < head.size(); ++k)
            if (head[k] > 0) cats.emplace_back(head[k], static_cast<std::int64_t>(k));
        if (m.tail_kind() != TailKind::None) cats.emplace_back(m.beyond_mass(), -1);
        std::stable_sort(cats.begin(), cats.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        for (const auto& [p, k] : cats) {
            value.push_back(k);
            mass.push_back(p);
        }
        suffix.assign(mass.size() + 1, 0.0);
        for (std::size_t i = mass.size(); i-- > 0;) suffix[i] = suffix[i + 1] + mass[i];
    }

    // category j >= i with probability mass[j] / suffix[i]
    std::size_t pick(std::size_t i, double u) const
    {
        const double target = u * suffix[i];
        std::size_t lo = i, hi = mass.size() - 1;   // invariant: suffix[lo] > target
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo + 1) / 2;
            if (suffix[mid] > target)
                lo = mid;
            else
                hi = mid - 1;
        }
        return lo;
    }
};

GwSampler::GwSampler(const OffspringModel& model, SamplerConfig cfg)
    : model_(std::make_shared<const OffspringModel>(model)), cfg_(cfg), rng_(cfg.seed, cfg.stream_id),
      offspring_(model)
{
    if (cfg_.max_nodes < 1) throw ParameterError("SamplerConfig: max_nodes must be >= 1");
}

bool GwSampler::gw_degrees(std::vector<std::int64_t>& out)
{
    out.clear();
    std::int64_t w = 0;
    while (true) {
        const std::int64_t k = offspring_(rng_);
        out.push_back(k);
        w += k - 1;
        if (w == -1) return true;
        if (static_cast<std::int64_t>(out.size()) >= cfg_.max_nodes) return false;
    }
}

GwResult GwSampler::sample_gw()
{
    if (gw_degrees(jumps_)) return Tree::from_degrees(jumps_);
    StrahlerStream s;
    for (auto k : jumps_) s.push(k);
    return CapExceeded{static_cast<std::int64_t>(jumps_.size()), s.prefix_strahler()};
}

StreamResult GwSampler::sample_gw_stats(std::optional<int> stop_above)
{
    StrahlerStream s(stop_above);
    while (!s.push(offspring_(rng_))) {
        if (s.nodes() >= cfg_.max_nodes) return {s.stats(), true, false};
    }
    return {s.stats(), false, s.stopped()};
}

void GwSampler::draw_jumps_direct(std::int64_t n)
{
    const std::int64_t target = n - 1;
    const std::uint64_t first_attempt = retries_.attempts;
    while (true) {
        if (retries_.attempts - first_attempt >= cfg_.max_retries)
            throw RetryBudgetError("sample_exact_size: retry budget exhausted", retries_.attempts, retries_.accepted);
        ++retries_.attempts;
        jumps_.clear();
        std::int64_t total = 0;
        bool alive = true;
        for (std::int64_t i = 0; i < n && alive; ++i) {
            const std::int64_t k = offspring_(rng_);
            total += k;
            alive = total <= target;
            jumps_.push_back(k);
        }
        if (alive && total == target) {
            ++retries_.accepted;
            return;
        }
    }
}

void GwSampler::draw_jumps_count_first(std::int64_t n)
{
    if (!count_first_) count_first_ = std::make_shared<const CountFirst>(*model_);
    const CountFirst& cf = *count_first_;
    const std::int64_t target = n - 1;
    const std::size_t ncat = cf.mass.size();
    std::vector<std::pair<std::size_t, std::int64_t>> counts;
    std::vector<std::int64_t> singles;
    const std::uint64_t first_attempt = retries_.attempts;
    while (true) {
        if (retries_.attempts - first_attempt >= cfg_.max_retries)
            throw RetryBudgetError("sample_exact_size: retry budget exhausted", retries_.attempts, retries_.accepted);
        ++retries_.attempts;
        counts.clear();
        singles.clear();
        std::int64_t rem = n, total = 0;
        bool alive = true;
        for (std::size_t i = 0; i < ncat && rem > 0 && alive; ++i) {
            if (rem <= individual_switch) {
                for (; rem > 0 && alive; --rem) {
                    const std::size_t j = cf.pick(i, rng_.uniform());
                    const std::int64_t k = cf.value[j] < 0 ? offspring_.sample_tail(rng_) : cf.value[j];
                    singles.push_back(k);
                    total += k;
                    alive = total <= target;
                }
                break;
            }
            std::int64_t c = rem;
            if (i + 1 < ncat) {
                const double ratio = std::min(1.0, cf.mass[i] / cf.suffix[i]);
                c = std::binomial_distribution<std::int64_t>(rem, ratio)(rng_.engine());
            }
            if (c == 0) continue;
            rem -= c;
            if (cf.value[i] < 0) {
                for (std::int64_t r = 0; r < c && alive; ++r) {
                    const std::int64_t k = offspring_.sample_tail(rng_);
                    singles.push_back(k);
                    total += k;
                    alive = total <= target;
                }
            } else {
                counts.emplace_back(i, c);
                total += c * cf.value[i];
                alive = total <= target;
            }
        }
        if (!alive || rem != 0 || total != target) continue;
        ++retries_.accepted;
        jumps_.clear();
        jumps_.reserve(static_cast<std::size_t>(n));
        for (const auto& [i, c] : counts) jumps_.insert(jumps_.end(), static_cast<std::size_t>(c), cf.value[i]);
        jumps_.insert(jumps_.end(), singles.begin(), singles.end());
        // uniform order of the multiset: an i.i.d. sequence conditioned on its counts
        for (std::size_t i = jumps_.size(); i > 1; --i) std::swap(jumps_[i - 1], jumps_[rng_.below(i)]);
        return;
    }
}

void GwSampler::rotate_accepted()
{
    const std::size_t shift = vervaat_shift(jumps_);
    std::rotate(jumps_.begin(), jumps_.begin() + static_cast<std::ptrdiff_t>(shift), jumps_.end());
}

std::vector<std::int64_t> GwSampler::sample_exact_size_degrees(std::int64_t n, ExactSizeStrategy strategy)
{
    if (n < 1) throw ParameterError("sample_exact_size: n must be >= 1");
    if (feasible_for_ != n) {
        if (!size_feasible(*model_, n))
            throw ConditioningError("sample_exact_size: P(#tau = " + std::to_string(n) + ") = 0 for this law");
        feasible_for_ = n;
    }
    if (strategy == ExactSizeStrategy::Automatic)
        strategy = n <= direct_limit ? ExactSizeStrategy::Direct : ExactSizeStrategy::CountFirst;
    if (strategy == ExactSizeStrategy::Direct)
        draw_jumps_direct(n);
    else
        draw_jumps_count_first(n);
    rotate_accepted();
    return jumps_;
}

Tree GwSampler::sample_exact_size(std::int64_t n, ExactSizeStrategy strategy)
{
    return Tree::from_degrees(sample_exact_size_degrees(n, strategy));
}

TreeStats GwSampler::sample_exact_size_stats(std::int64_t n, ExactSizeStrategy strategy)
{
    sample_exact_size_degrees(n, strategy);
    StrahlerStream s;
    for (auto k : jumps_) s.push(k);
    return s.stats();
}

Tree GwSampler::sample_at_least_size(std::int64_t n)
{
    if (n < 1) throw ParameterError("sample_at_least_size: n must be >= 1");
    const std::uint64_t first_attempt = retries_.attempts;
    while (true) {
        if (retries_.attempts - first_attempt >= cfg_.max_retries)
            throw RetryBudgetError("sample_at_least_size: retry budget exhausted", retries_.attempts, retries_.accepted);
        ++retries_.attempts;
        const bool done = gw_degrees(jumps_);
        if (!done) throw ResourceError("sample_at_least_size: tree exceeded max_nodes; use the stats variant");
        if (static_cast<std::int64_t>(jumps_.size()) >= n) {
            ++retries_.accepted;
            return Tree::from_degrees(jumps_);
        }
    }
}

StreamResult GwSampler::sample_at_least_size_stats(std::int64_t n)
{
    if (n < 1) throw ParameterError("sample_at_least_size: n must be >= 1");
    const std::uint64_t first_attempt = retries_.attempts;
    while (true) {
        if (retries_.attempts - first_attempt >= cfg_.max_retries)
            throw RetryBudgetError("sample_at_least_size: retry budget exhausted", retries_.attempts, retries_.accepted);
        ++retries_.attempts;
        const StreamResult r = sample_gw_stats();
        if (r.capped || r.stats.size >= n) {
            ++retries_.accepted;
            return r;
        }
    }
}

std::pair<std::int64_t, std::int64_t> GwSampler::spine_step()
{
    if (!size_biased_) size_biased_.emplace(*model_, OffspringBias::Size);
    const std::int64_t k = (*size_biased_)(rng_);
    return {k, 1 + static_cast<std::int64_t>(rng_.below(static_cast<std::uint64_t>(k)))};
}

std::vector<std::pair<std::int64_t, std::int64_t>> GwSampler::sample_spine(std::int64_t h)
{
    if (h < 0) throw ParameterError("sample_spine: h must be >= 0");
    std::vector<std::pair<std::int64_t, std::int64_t>> spine(static_cast<std::size_t>(h));
    for (auto& step : spine) step = spine_step();
    return spine;
}

KestenSlice GwSampler::sample_kesten(std::int64_t h)
{
    if (h < 0) throw ParameterError("sample_kesten: h must be >= 0");
    KestenSlice slice;
    slice.levels.resize(static_cast<std::size_t>(h));
    std::vector<std::int64_t> buf;
    auto graft = [&]() {
        if (!gw_degrees(buf)) throw ResourceError("sample_kesten: grafted tree exceeded max_nodes");
        return Tree::from_degrees(buf);
    };
    for (auto& lv : slice.levels) {
        std::tie(lv.k, lv.j) = spine_step();
        for (std::int64_t c = 1; c < lv.j; ++c) lv.left.push_back(graft());
        for (std::int64_t c = lv.j + 1; c <= lv.k; ++c) lv.right.push_back(graft());
    }
    return slice;
}

Tree KestenSlice::to_tree() const
{
    std::vector<std::int64_t> deg;
    auto append = [&](const Tree& t) {
        for (Tree::Index u = 0; u < t.size(); ++u) deg.push_back(static_cast<std::int64_t>(t.degree(u)));
    };
    for (const auto& lv : levels) {
        deg.push_back(lv.k);
        for (const auto& t : lv.left) append(t);
    }
    deg.push_back(0);   // U_h
    for (auto it = levels.rbegin(); it != levels.rend(); ++it)
        for (const auto& t : it->right) append(t);
    return Tree::from_degrees(deg);
}

Tree::Index KestenSlice::marked() const
{
    std::size_t idx = 0;
    for (const auto& lv : levels) {
        ++idx;
        for (const auto& t : lv.left) idx += t.size();
    }
    return static_cast<Tree::Index>(idx);
}

GwResult sample_gw(const OffspringModel& model, const SamplerConfig& cfg) { return GwSampler(model, cfg).sample_gw(); }

Tree sample_exact_size(const OffspringModel& model, std::int64_t n, const SamplerConfig& cfg)
{
    return GwSampler(model, cfg).sample_exact_size(n);
}

Tree sample_at_least_size(const OffspringModel& model, std::int64_t n, const SamplerConfig& cfg)
{
    return GwSampler(model, cfg).sample_at_least_size(n);
}

KestenSlice sample_kesten(const OffspringModel& model, std::int64_t h, const SamplerConfig& cfg)
{
    return GwSampler(model, cfg).sample_kesten(h);
}

} // namespace hsgw
