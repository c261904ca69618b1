#include "hsgw/experiments.hpp"

#include "hsgw/error.hpp"
#include "hsgw/exact.hpp"
#include "hsgw/generating.hpp"
#include "hsgw/norming.hpp"
#include "hsgw/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace hsgw {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x)
{
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s.precision(6);
    s << x;
    return s.str();
}

// Runs task(i) for i in [0, count) on up to `threads` workers pulling indices from a shared counter.
// Tasks write to their own output slots, so the result does not depend on scheduling.
void run_tasks(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task)
{
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::uint64_t stream_of(std::size_t row, std::size_t chunk)
{
    return (static_cast<std::uint64_t>(row) << 32) | static_cast<std::uint64_t>(chunk);
}

SamplerConfig sampler_config(const ExperimentConfig& cfg, std::uint64_t stream)
{
    return {.seed = cfg.seed, .max_nodes = cfg.max_nodes, .max_retries = cfg.max_retries, .stream_id = stream};
}

// R type-7 quantile of sorted data
double quantile(const std::vector<double>& sorted, double p)
{
    if (sorted.empty()) return nan;
    const double h = p * double(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - double(lo)) * (sorted[hi] - sorted[lo]);
}

struct MeanSd
{
    double mean = nan;
    double sd = nan;
};

MeanSd mean_sd(const std::vector<double>& x)
{
    if (x.empty()) return {};
    const double m = std::accumulate(x.begin(), x.end(), 0.0) / double(x.size());
    double ss = 0;
    for (double v : x) ss += (v - m) * (v - m);
    return {m, x.size() > 1 ? std::sqrt(ss / double(x.size() - 1)) : 0.0};
}

// one replicate of a conditioned experiment
struct Draw
{
    TreeStats stats;
    bool failed = false;
    bool capped = false;
};

struct RowPlan
{
    std::int64_t n = 0;
    std::int64_t requested = 0;
    std::int64_t planned = 0;
    double acceptance = nan;   // exact acceptance probability when known
};

enum class Conditioning { ExactSize, AtLeast };

struct RowDraws
{
    std::vector<Draw> draws;
    RetryStats retries;
};

std::vector<RowDraws> draw_rows(const OffspringModel& model, const std::vector<RowPlan>& plans, Conditioning cond,
                                const ExperimentConfig& cfg)
{
    struct Task
    {
        std::size_t row;
        std::size_t chunk;
        std::int64_t first;
        std::int64_t count;
    };
    std::vector<Task> tasks;
    std::vector<RowDraws> out(plans.size());
    const std::int64_t chunk = std::max<std::int64_t>(1, cfg.chunk);
    for (std::size_t r = 0; r < plans.size(); ++r) {
        out[r].draws.resize(static_cast<std::size_t>(plans[r].planned));
        for (std::int64_t first = 0, c = 0; first < plans[r].planned; first += chunk, ++c)
            tasks.push_back({r, static_cast<std::size_t>(c), first, std::min(chunk, plans[r].planned - first)});
    }
    std::vector<RetryStats> task_retries(tasks.size());

    run_tasks(tasks.size(), cfg.threads, [&](std::size_t i) {
        const Task& t = tasks[i];
        GwSampler sampler(model, sampler_config(cfg, stream_of(t.row, t.chunk)));
        auto& draws = out[t.row].draws;
        for (std::int64_t k = 0; k < t.count; ++k) {
            Draw& d = draws[static_cast<std::size_t>(t.first + k)];
            try {
                if (cond == Conditioning::ExactSize) {
                    d.stats = sampler.sample_exact_size_stats(plans[t.row].n);
                } else {
                    const StreamResult r = sampler.sample_at_least_size_stats(plans[t.row].n);
                    d.stats = r.stats;
                    d.capped = r.capped;
                }
            } catch (const RetryBudgetError&) {
                d.failed = true;
            }
        }
        task_retries[i] = sampler.retry_stats();
    });

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        out[tasks[i].row].retries.attempts += task_retries[i].attempts;
        out[tasks[i].row].retries.accepted += task_retries[i].accepted;
    }
    return out;
}

std::vector<RowPlan> plan_rows(const OffspringModel& model, const std::vector<std::int64_t>& ns, std::int64_t samples,
                               Conditioning cond, const ExperimentConfig& cfg)
{
    if (ns.empty()) throw ParameterError("experiment: empty n list");
    if (samples < 1) throw ParameterError("experiment: samples must be >= 1");
    std::vector<std::int64_t> sorted = ns;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.front() < 1) throw ParameterError("experiment: n must be >= 1");

    std::vector<RowPlan> plans;
    for (std::int64_t n : sorted) {
        RowPlan p{n, samples, samples, nan};
        if (cond == Conditioning::ExactSize) {
            // P(W_n = -1) is the acceptance probability of one rejection attempt
            p.acceptance = walk_point_mass(model, n, 1).probability;
            if (!(p.acceptance > 0))
                throw ConditioningError("experiment: P(#tau = " + std::to_string(n) + ") = 0 for this model");
            if (cfg.attempt_budget > 0 && double(samples) / p.acceptance > cfg.attempt_budget)
                p.planned = std::max<std::int64_t>(1, static_cast<std::int64_t>(cfg.attempt_budget * p.acceptance));
        }
        plans.push_back(p);
    }
    return plans;
}

// fills the S statistics and Delta / b_n columns; `theory` and `b` are per-row normalisers
ReportRow summarize(const RowPlan& plan, const RowDraws& rd, double theory, double b, double delta_x)
{
    ReportRow row;
    row.n = plan.n;
    row.requested = plan.requested;
    row.theory = theory;

    std::vector<double> s, ratio, delta;
    for (const Draw& d : rd.draws) {
        if (d.failed) {
            ++row.failed;
            continue;
        }
        if (d.capped) {
            ++row.capped;
            continue;
        }
        s.push_back(d.stats.strahler);
        ratio.push_back(d.stats.strahler / theory);
        if (b > 0) delta.push_back(double(d.stats.max_degree) / b);
    }
    row.samples = static_cast<std::int64_t>(s.size());
    row.partial = row.samples < row.requested;

    const auto ms = mean_sd(s);
    row.mean_s = ms.mean;
    row.std_s = ms.sd;
    std::sort(s.begin(), s.end());
    row.q05 = quantile(s, 0.05);
    row.q25 = quantile(s, 0.25);
    row.q50 = quantile(s, 0.5);
    row.q75 = quantile(s, 0.75);
    row.q95 = quantile(s, 0.95);

    const auto mr = mean_sd(ratio);
    row.mean_ratio = mr.mean;
    row.ci_half = ratio.size() > 1 ? 1.959963984540054 * mr.sd / std::sqrt(double(ratio.size())) : nan;

    if (delta.empty()) {
        row.mean_delta_b = row.median_delta_b = row.p_delta_b = row.p_delta_b_se = nan;
    } else {
        row.mean_delta_b = mean_sd(delta).mean;
        const double hits = double(std::count_if(delta.begin(), delta.end(), [&](double x) { return x >= delta_x; }));
        const double m = double(delta.size());
        row.p_delta_b = hits / m;
        row.p_delta_b_se = std::sqrt(row.p_delta_b * (1 - row.p_delta_b) / m);
        std::sort(delta.begin(), delta.end());
        row.median_delta_b = quantile(delta, 0.5);
    }
    row.acceptance_rate = rd.retries.acceptance_rate();
    return row;
}

GateResult gate(std::string name, bool hard, bool passed, double value, double lo, double hi, std::string detail = {})
{
    return {std::move(name), hard, passed, value, lo, hi, std::move(detail)};
}

// |mean_ratio - 1| strictly decreasing along the rows
GateResult trend_gate(const std::vector<ReportRow>& rows)
{
    std::string detail = "|mean_ratio-1| by n:";
    bool ok = rows.size() >= 2;
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        const double e = std::abs(r.mean_ratio - 1);
        detail += " " + fmt(e);
        ok = ok && e < prev;
        prev = e;
    }
    return gate("trend", true, ok, rows.empty() ? nan : std::abs(rows.back().mean_ratio - 1), 0, nan, detail);
}

ExperimentReport start_report(std::string id, const ModelSpec& spec, std::int64_t samples, const ExperimentConfig& cfg)
{
    ExperimentReport rep;
    rep.experiment = std::move(id);
    rep.model = resolved_spec(spec);
    rep.seed = cfg.seed;
    rep.threads = cfg.threads;
    rep.samples = samples;
    return rep;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentReport run_cauchy(std::string id, Conditioning cond, const ModelSpec& spec,
                            const std::vector<std::int64_t>& ns, std::int64_t samples, const ExperimentConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    const OffspringModel model = build_model(spec);
    if (model.tail_kind() != TailKind::Cauchy)
        throw ParameterError(id + ": needs a model in the Cauchy domain (log_power, exp_log_power, log_over_log_log)");
    const GeneratingOracle oracle(model);
    const NormingSequences norming(model);
    const auto& g = cfg.gates;

    ExperimentReport rep = start_report(id, spec, samples, cfg);
    const auto plans = plan_rows(model, ns, samples, cond, cfg);
    const auto draws = draw_rows(model, plans, cond, cfg);
    for (std::size_t r = 0; r < plans.size(); ++r) {
        const double n = double(plans[r].n);
        const double b = norming.b(n);
        if (!(b > 1)) throw ParameterError(id + ": b_n <= 1 at n = " + std::to_string(plans[r].n) + "; use a larger n");
        ReportRow row = summarize(plans[r], draws[r], oracle.upsilon(1 / b), b, g.delta_tail_x);
        row.extras = {{"a_n", norming.a(n)}, {"b_n", b}, {"exact_acceptance", plans[r].acceptance}};
        rep.rows.push_back(std::move(row));
    }

    const ReportRow& last = rep.rows.back();
    rep.gates.push_back(trend_gate(rep.rows));
    rep.gates.push_back(gate("ratio_band", true, last.mean_ratio >= g.cauchy_ratio_lo && last.mean_ratio <= g.cauchy_ratio_hi,
                             last.mean_ratio, g.cauchy_ratio_lo, g.cauchy_ratio_hi, "mean S/Upsilon(1/b_n) at n = " + std::to_string(last.n)));
    if (cond == Conditioning::AtLeast) {
        const double target = 1 / g.delta_tail_x;
        const double slack = g.sigmas * last.p_delta_b_se;
        rep.gates.push_back(gate("delta_tail", true, std::abs(last.p_delta_b - target) <= slack, last.p_delta_b,
                                 target - slack, target + slack,
                                 "P(Delta/b_n >= " + fmt(g.delta_tail_x) + ") against 1/x at n = " + std::to_string(last.n)));
    } else {
        rep.gates.push_back(gate("delta_median", true,
                                 last.median_delta_b >= g.delta_median_lo && last.median_delta_b <= g.delta_median_hi,
                                 last.median_delta_b, g.delta_median_lo, g.delta_median_hi,
                                 "median Delta/b_n at n = " + std::to_string(last.n)));
    }
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

} // namespace

ExperimentReport run_theorem1(const ModelSpec& spec, const std::vector<std::int64_t>& ns, std::int64_t samples,
                              const ExperimentConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    const OffspringModel model = build_model(spec);
    if (model.tail_kind() == TailKind::Cauchy)
        throw ParameterError("theorem1: needs alpha in (1,2]; use theorem2/theorem3 for Cauchy-domain models");
    const double alpha = model.alpha();
    const double log_base = std::log(alpha / (alpha - 1));
    const auto& g = cfg.gates;

    ExperimentReport rep = start_report("theorem1", spec, samples, cfg);
    const auto plans = plan_rows(model, ns, samples, Conditioning::ExactSize, cfg);
    const auto draws = draw_rows(model, plans, Conditioning::ExactSize, cfg);
    for (std::size_t r = 0; r < plans.size(); ++r) {
        const double theory = std::log(double(plans[r].n)) / log_base / alpha;
        ReportRow row = summarize(plans[r], draws[r], theory, 0, g.delta_tail_x);
        double far = 0;
        std::int64_t used = 0;
        for (const Draw& d : draws[r].draws) {
            if (d.failed || d.capped) continue;
            far += std::abs(d.stats.strahler / theory - 1) > g.far_from_one;
            ++used;
        }
        row.extras = {{"p_far", used ? far / double(used) : nan}, {"exact_acceptance", plans[r].acceptance}};
        rep.rows.push_back(std::move(row));
    }

    const ReportRow& last = rep.rows.back();
    rep.gates.push_back(gate("ratio_band", true,
                             last.mean_ratio - last.ci_half >= g.ratio_lo && last.mean_ratio + last.ci_half <= g.ratio_hi,
                             last.mean_ratio, g.ratio_lo, g.ratio_hi,
                             "95% CI [" + fmt(last.mean_ratio - last.ci_half) + ", " + fmt(last.mean_ratio + last.ci_half) +
                                 "] at n = " + std::to_string(last.n)));
    rep.gates.push_back(trend_gate(rep.rows));

    bool increasing = true;
    for (std::size_t r = 1; r < rep.rows.size(); ++r) increasing = increasing && rep.rows[r].mean_s > rep.rows[r - 1].mean_s;
    rep.gates.push_back(gate("mean_s_increasing", false, increasing, last.mean_s, nan, nan));

    // uniform plane trees: E[S] = log_4 n + bounded oscillation
    if (model.family() == "geometric") {
        for (const auto& row : rep.rows) {
            const double l4 = std::log(double(row.n)) / std::log(4.0);
            if (std::abs(l4 - std::round(l4)) > 1e-9) continue;
            rep.gates.push_back(gate("catalan_n" + std::to_string(row.n), true,
                                     std::abs(row.mean_s - l4) <= g.catalan_slack, row.mean_s, l4 - g.catalan_slack,
                                     l4 + g.catalan_slack, "mean S against log_4 n"));
        }
    }
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

ExperimentReport run_theorem2(const ModelSpec& spec, const std::vector<std::int64_t>& ns, std::int64_t samples,
                              const ExperimentConfig& cfg)
{
    return run_cauchy("theorem2", Conditioning::AtLeast, spec, ns, samples, cfg);
}

ExperimentReport run_theorem3(const ModelSpec& spec, const std::vector<std::int64_t>& ns, std::int64_t samples,
                              const ExperimentConfig& cfg)
{
    return run_cauchy("theorem3", Conditioning::ExactSize, spec, ns, samples, cfg);
}

namespace {

// Counters accumulated over unconditioned draws that stop once S > stop is known.
struct TailCounts
{
    std::int64_t draws = 0;
    std::vector<std::int64_t> above;             // per level: S > n
    std::vector<double> size_sum, size_sq;       // per size-bound level: #tau 1{S <= n}
    double s0_size = 0, s0_size_sq = 0;          // #tau 1{S = 0}
    std::vector<std::int64_t> height_hits;       // per pair: S <= m and |tau| >= n
    std::vector<std::int64_t> degree_hits;       // per pair: S <= m and Delta >= n
    std::vector<std::int64_t> z_den, z_num;      // per pair: S = n, and S = n with Z >= m
    std::int64_t capped = 0;

    explicit TailCounts(const TailConfig& t)
        : above(t.levels.size()), size_sum(t.size_bound_levels.size()), size_sq(t.size_bound_levels.size()),
          height_hits(t.height_bound.size()), degree_hits(t.degree_bound.size()), z_den(t.z_law.size()),
          z_num(t.z_law.size())
    {
    }

    void add(const TailCounts& o)
    {
        draws += o.draws;
        capped += o.capped;
        s0_size += o.s0_size;
        s0_size_sq += o.s0_size_sq;
        auto sum = [](auto& a, const auto& b) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        };
        sum(above, o.above);
        sum(size_sum, o.size_sum);
        sum(size_sq, o.size_sq);
        sum(height_hits, o.height_hits);
        sum(degree_hits, o.degree_hits);
        sum(z_den, o.z_den);
        sum(z_num, o.z_num);
    }
};

int stop_level(const TailConfig& t)
{
    int m = 0;
    for (int n : t.levels) m = std::max(m, n);
    for (int n : t.size_bound_levels) m = std::max(m, n);
    for (const auto& [mm, n] : t.height_bound) m = std::max(m, mm);
    for (const auto& [mm, n] : t.degree_bound) m = std::max(m, mm);
    for (const auto& [n, mm] : t.z_law) m = std::max(m, n);
    return m;
}

void record(TailCounts& c, const TailConfig& t, const StreamResult& r, int stop)
{
    ++c.draws;
    if (r.capped) {
        ++c.capped;
        return;
    }
    // a stopped stream only certifies S > stop; its other statistics are those of a prefix
    const bool known = !r.stopped_early;
    const int s = known ? r.stats.strahler : stop + 1;
    const TreeStats& st = r.stats;
    for (std::size_t i = 0; i < t.levels.size(); ++i) c.above[i] += s > t.levels[i];
    for (std::size_t i = 0; i < t.size_bound_levels.size(); ++i) {
        if (known && s <= t.size_bound_levels[i]) {
            c.size_sum[i] += double(st.size);
            c.size_sq[i] += double(st.size) * double(st.size);
        }
    }
    if (known && s == 0) {
        c.s0_size += double(st.size);
        c.s0_size_sq += double(st.size) * double(st.size);
    }
    for (std::size_t i = 0; i < t.height_bound.size(); ++i)
        c.height_hits[i] += known && s <= t.height_bound[i].first && st.height >= t.height_bound[i].second;
    for (std::size_t i = 0; i < t.degree_bound.size(); ++i)
        c.degree_hits[i] += known && s <= t.degree_bound[i].first && st.max_degree >= t.degree_bound[i].second;
    for (std::size_t i = 0; i < t.z_law.size(); ++i) {
        if (known && s == t.z_law[i].first) {
            ++c.z_den[i];
            c.z_num[i] += st.z >= t.z_law[i].second;
        }
    }
}

} // namespace

ExperimentReport run_tail_experiment(const ModelSpec& spec, std::int64_t samples, const ExperimentConfig& cfg,
                                     const TailConfig& tail)
{
    const auto t0 = std::chrono::steady_clock::now();
    if (samples < 1) throw ParameterError("tail: samples must be >= 1");
    if (tail.table_size < 1) throw ParameterError("tail: table_size must be >= 1");
    for (auto n : tail.upsilon_ns)
        if (n < 1 || n > tail.table_size) throw ParameterError("tail: upsilon n outside 1..table_size");
    for (int n : tail.levels)
        if (n < 0 || n > tail.table_size) throw ParameterError("tail: level outside 0..table_size");

    const OffspringModel model = build_model(spec);
    const GeneratingOracle oracle(model);
    const TailTable table = tail_table(oracle, tail.table_size);
    const auto& g = cfg.gates;
    const int stop = stop_level(tail);

    // Monte Carlo
    const std::int64_t chunk = std::max<std::int64_t>(cfg.chunk, (samples + 399) / 400);
    const std::size_t n_tasks = static_cast<std::size_t>((samples + chunk - 1) / chunk);
    std::vector<TailCounts> parts(n_tasks, TailCounts(tail));
    run_tasks(n_tasks, cfg.threads, [&](std::size_t i) {
        GwSampler sampler(model, sampler_config(cfg, stream_of(0, i)));
        const std::int64_t first = std::int64_t(i) * chunk;
        const std::int64_t count = std::min(chunk, samples - first);
        for (std::int64_t k = 0; k < count; ++k) record(parts[i], tail, sampler.sample_gw_stats(stop), stop);
    });
    TailCounts c(tail);
    for (const auto& p : parts) c.add(p);
    const double N = double(c.draws);

    ExperimentReport rep = start_report("tail", spec, samples, cfg);

    // rows: Monte Carlo levels and the Upsilon series, merged by n
    std::vector<std::int64_t> ns(tail.levels.begin(), tail.levels.end());
    ns.insert(ns.end(), tail.upsilon_ns.begin(), tail.upsilon_ns.end());
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    for (std::int64_t n : ns) {
        ReportRow row;
        row.n = n;
        row.mean_s = row.std_s = row.q05 = row.q25 = row.q50 = row.q75 = row.q95 = nan;
        row.mean_delta_b = row.median_delta_b = row.p_delta_b = row.p_delta_b_se = nan;
        row.acceptance_rate = 1;
        row.theory = table.q(n);

        double q_mc = nan, q_se = nan;
        const auto lv = std::find(tail.levels.begin(), tail.levels.end(), n);
        if (lv != tail.levels.end()) {
            const auto i = static_cast<std::size_t>(lv - tail.levels.begin());
            row.requested = samples;
            row.samples = c.draws - c.capped;
            row.capped = c.capped;
            row.partial = c.capped > 0;
            q_mc = double(c.above[i]) / N;
            q_se = std::sqrt(row.theory * (1 - row.theory) / N);
            row.mean_ratio = q_mc / row.theory;
            row.ci_half = 1.959963984540054 * q_se / row.theory;
        } else {
            row.mean_ratio = row.ci_half = nan;
        }
        const double ups = n >= 1 ? oracle.upsilon_at(table.Q[static_cast<std::size_t>(n)]) / double(n) : nan;
        row.extras = {{"Q_n", table.Q[static_cast<std::size_t>(n)]},
                      {"Q_err", table.error[static_cast<std::size_t>(n)]},
                      {"q_mc", q_mc},
                      {"q_mc_se", q_se},
                      {"upsilon_ratio", ups}};
        rep.rows.push_back(std::move(row));
    }

    // exact tail against Monte Carlo
    for (std::size_t i = 0; i < tail.levels.size(); ++i) {
        const int n = tail.levels[i];
        const double q = table.q(n);
        const double se = std::sqrt(q * (1 - q) / N);
        const double est = double(c.above[i]) / N;
        rep.gates.push_back(gate("tail_q" + std::to_string(n), true, std::abs(est - q) <= g.sigmas * se, est,
                                 q - g.sigmas * se, q + g.sigmas * se, "Monte Carlo P(S > n) against the exact table"));
    }

    // E[#tau; S = 0] = mu(0) / (1 - mu(1))^2
    {
        const double exact = expected_size_at_s0(model);
        const double mean = c.s0_size / N;
        const double se = std::sqrt(std::max(0.0, c.s0_size_sq / N - mean * mean) / N);
        rep.gates.push_back(gate("size_s0", true, std::abs(mean - exact) <= g.sigmas * se, mean,
                                 exact - g.sigmas * se, exact + g.sigmas * se, "E[#tau; S = 0] against the closed form"));
    }
    // psi'(q_{n-1}) E[#tau; S <= n] <= 2
    for (std::size_t i = 0; i < tail.size_bound_levels.size(); ++i) {
        const int n = tail.size_bound_levels[i];
        const double w = oracle.psi_prime(table.q(n - 1));
        const double mean = c.size_sum[i] / N;
        const double se = std::sqrt(std::max(0.0, c.size_sq[i] / N - mean * mean) / N);
        const double low = w * (mean - g.sigmas * se);
        rep.gates.push_back(gate("size_bound_n" + std::to_string(n), true, low <= 2, w * mean, nan, 2,
                                 "psi'(q_{n-1}) E[#tau; S <= n]; lower 3-sigma end " + fmt(low)));
    }
    // P(S <= m | |tau| >= n) <= exp(-n psi'(q_m) / 8) where 2 psi'(P(|tau| >= n/2)) <= psi'(q_m)
    for (std::size_t i = 0; i < tail.height_bound.size(); ++i) {
        const auto [m, n] = tail.height_bound[i];
        const double rhs_rate = oracle.psi_prime(table.q(m));
        const double hyp = 2 * oracle.psi_prime(height_tail(oracle, n / 2));
        const double den = height_tail(oracle, n);
        const double p = double(c.height_hits[i]) / N;
        const double est = p / den;
        const double se = std::sqrt(p * (1 - p) / N) / den;
        const double bound = std::exp(-double(n) * rhs_rate / 8);
        const std::string name = "height_bound_m" + std::to_string(m) + "_n" + std::to_string(n);
        if (!(hyp <= rhs_rate)) {
            rep.gates.push_back(gate(name, false, false, est, nan, bound,
                                     "hypothesis fails: 2 psi'(P(|tau| >= n/2)) = " + fmt(hyp) + " > psi'(q_m) = " + fmt(rhs_rate)));
            continue;
        }
        rep.gates.push_back(gate(name, true, est - g.sigmas * se <= bound, est, nan, bound,
                                 "P(S <= m | |tau| >= n), se " + fmt(se)));
    }
    // P(S <= m | Delta >= n) <= exp(-n q_m)
    for (std::size_t i = 0; i < tail.degree_bound.size(); ++i) {
        const auto [m, n] = tail.degree_bound[i];
        const double den = 1 - max_degree_below(model, n);
        const std::string name = "degree_bound_m" + std::to_string(m) + "_n" + std::to_string(n);
        if (!(den > 0)) {
            rep.gates.push_back(gate(name, false, false, nan, nan, nan, "P(Delta >= n) = 0 for this law"));
            continue;
        }
        const double p = double(c.degree_hits[i]) / N;
        const double est = p / den;
        const double se = std::sqrt(p * (1 - p) / N) / den;
        const double bound = std::exp(-double(n) * table.q(m));
        rep.gates.push_back(gate(name, true, est - g.sigmas * se <= bound, est, nan, bound, "P(S <= m | Delta >= n), se " + fmt(se)));
    }
    // P(Z >= m | S = n) = (1 - psi'(q_{n-1}))^m
    for (std::size_t i = 0; i < tail.z_law.size(); ++i) {
        const auto [n, m] = tail.z_law[i];
        const double exact = z_conditional_law(oracle, table, n, m);
        const double den = double(c.z_den[i]);
        const double est = den > 0 ? double(c.z_num[i]) / den : nan;
        const double se = den > 0 ? std::sqrt(exact * (1 - exact) / den) : nan;
        rep.gates.push_back(gate("z_law_n" + std::to_string(n) + "_m" + std::to_string(m), true,
                                 den > 0 && std::abs(est - exact) <= g.sigmas * se, est, exact - g.sigmas * se,
                                 exact + g.sigmas * se, "conditioned on " + std::to_string(c.z_den[i]) + " draws with S = n"));
    }
    // Upsilon(q_n) / n: band at the largest n and monotone approach to 1
    if (!tail.upsilon_ns.empty()) {
        std::vector<std::int64_t> un = tail.upsilon_ns;
        std::sort(un.begin(), un.end());
        std::string detail = "Upsilon(q_n)/n by n:";
        bool monotone = true;
        double prev = std::numeric_limits<double>::infinity(), last = nan;
        for (auto n : un) {
            last = oracle.upsilon_at(table.Q[static_cast<std::size_t>(n)]) / double(n);
            detail += " " + fmt(last);
            monotone = monotone && std::abs(last - 1) < prev;
            prev = std::abs(last - 1);
        }
        rep.gates.push_back(gate("upsilon_band", true, std::abs(last - 1) <= g.upsilon_band, last, 1 - g.upsilon_band,
                                 1 + g.upsilon_band, "at n = " + std::to_string(un.back())));
        // one n says nothing about a trend, so the gate only counts with two or more
        rep.gates.push_back(gate("upsilon_monotone", un.size() >= 2, monotone && un.size() >= 2, last, nan, nan, detail));
    }
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

} // namespace hsgw
