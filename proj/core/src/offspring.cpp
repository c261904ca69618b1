#include "hsgw/offspring.hpp"

#include "hsgw/error.hpp"
#include "numerics.hpp"

#include <cmath>
#include <array>
#include <limits>

namespace hsgw {

namespace {

constexpr double head_floor = 1e-16;
constexpr std::int64_t min_tail_head = 1024;

// exp(sum c_n x^-n) = sum e_j x^-j, j <= 4
std::array<double, 5> exponentiate(const detail::GammaRatioSeries& s)
{
    const double c1 = s.c[0], c2 = s.c[1], c3 = s.c[2], c4 = s.c[3];
    return {1.0, c1, c2 + c1 * c1 / 2, c3 + c1 * c2 + c1 * c1 * c1 / 6,
            c4 + c1 * c3 + c2 * c2 / 2 + c1 * c1 * c2 / 2 + c1 * c1 * c1 * c1 / 24};
}

struct CauchySums
{
    double mass = 0;   // sum_{k >= n0} L(k)/k^2
    double mean = 0;   // sum_{k >= n0} L(k)/k
    double beyond_mass = 0;
    double beyond_mean = 0;
};

// Euler-Maclaurin tail sums of L(k)/k^2 and L(k)/k over k > K (unit scale)
CauchySums cauchy_beyond(const SlowlyVarying& l, std::int64_t K)
{
    const double x = static_cast<double>(K) + 0.5;
    const double v = std::log(x);
    const double lam = l.dlog_dlog(v);
    const double lval = l.log_value_at_log(v);
    const double mu = std::exp(lval - 2 * v);
    const double g = lval;
    const double i0 = std::exp(lval - v + detail::log_integral_halfline<double>(
                                              [&](double u) { return l.log_value_at_log(v + u) - g - u; }));
    const double i1 = std::exp(l.log_ell_at_log(v));
    CauchySums out;
    out.beyond_mass = i0 + mu * (lam - 2) / x / 24;
    out.beyond_mean = i1 + mu * (lam - 1) / 24;
    return out;
}

CauchySums cauchy_sums(const SlowlyVarying& l, std::int64_t n0, std::int64_t K)
{
    detail::CompensatedSum<double> m0, m1;
    for (std::int64_t k = K; k >= n0; --k) {
        const double lk = std::log(static_cast<double>(k));
        const double lv = l.log_value_at_log(lk);
        m0.add(std::exp(lv - 2 * lk));
        m1.add(std::exp(lv - lk));
    }
    CauchySums out = cauchy_beyond(l, K);
    out.mass = m0.value() + out.beyond_mass;
    out.mean = m1.value() + out.beyond_mean;
    return out;
}

void check_cauchy_args(const SlowlyVarying& l, std::int64_t n0, double c)
{
    if (n0 < 2) throw ParameterError("make_cauchy: n0 must be >= 2");
    if (n0 > min_tail_head) throw ParameterError("make_cauchy: n0 must be <= 1024");
    if (!(std::log(static_cast<double>(n0)) > l.min_log_argument()))
        throw ParameterError("make_cauchy: n0 below the domain of " + l.name() + " (need n0 >= 16)");
    if (!(c > 0) || !std::isfinite(c)) throw ParameterError("make_cauchy: c must be > 0");
}

} // namespace

std::string OffspringModel::family() const
{
    if (tail_ == TailKind::Cauchy) return slow_->name();
    return family_;
}

void OffspringModel::finish()
{
    const auto n = head_.size();
    suffix_mass_.assign(n + 1, 0.0);
    suffix_mean_.assign(n + 1, 0.0);
    detail::CompensatedSum<double> m0, m1;
    m0.add(beyond_mass_);
    m1.add(beyond_mean_);
    suffix_mass_[n] = beyond_mass_;
    suffix_mean_[n] = beyond_mean_;
    for (std::size_t k = n; k-- > 0;) {
        m0.add(head_[k]);
        m1.add(static_cast<double>(k) * head_[k]);
        suffix_mass_[k] = m0.value();
        suffix_mean_[k] = m1.value();
    }
}

double OffspringModel::pmf(std::int64_t k) const
{
    if (k < 0) return 0.0;
    if (k <= head_max()) return head_[static_cast<std::size_t>(k)];
    if (tail_ == TailKind::None) return 0.0;
    return std::exp(log_pmf_at_log(std::log(static_cast<double>(k))));
}

double OffspringModel::log_pmf_at_log(double v) const
{
    switch (tail_) {
    case TailKind::Stable: return log_stable_const_ + detail::GammaRatioSeries(-alpha_, 1.0).at_log(v);
    case TailKind::Cauchy: return std::log(c_) + slow_->log_value_at_log(v) - 2 * v;
    case TailKind::None: break;
    }
    return detail::neg_inf<double>;
}

double OffspringModel::dlog_pmf_dlog(double v) const
{
    switch (tail_) {
    case TailKind::Stable: {
        const detail::GammaRatioSeries s(-alpha_, 1.0);
        double d = s.power;
        const double inv = std::exp(-v);
        double p = inv;
        for (int n = 1; n <= 4; ++n, p *= inv) d -= n * s.c[n - 1] * p;
        return d;
    }
    case TailKind::Cauchy: return slow_->dlog_dlog(v) - 2;
    case TailKind::None: break;
    }
    return 0;
}

double OffspringModel::log_tail_integral0(double v) const
{
    switch (tail_) {
    case TailKind::Stable: {
        const auto e = exponentiate(detail::GammaRatioSeries(-alpha_, 1.0));
        const double inv = std::exp(-v);
        double sum = 0, p = 1;
        for (int j = 0; j <= 4; ++j, p *= inv) sum += e[j] * p / (alpha_ + j);
        return log_stable_const_ - alpha_ * v + std::log(sum);
    }
    case TailKind::Cauchy: {
        const double g = slow_->log_value_at_log(v);
        return std::log(c_) + g - v +
               detail::log_integral_halfline<double>([&](double u) { return slow_->log_value_at_log(v + u) - g - u; });
    }
    case TailKind::None: break;
    }
    return detail::neg_inf<double>;
}

double OffspringModel::log_tail_integral1(double v) const
{
    switch (tail_) {
    case TailKind::Stable: {
        const auto e = exponentiate(detail::GammaRatioSeries(-alpha_, 1.0));
        const double inv = std::exp(-v);
        double sum = 0, p = 1;
        for (int j = 0; j <= 4; ++j, p *= inv) sum += e[j] * p / (alpha_ - 1 + j);
        return log_stable_const_ + (1 - alpha_) * v + std::log(sum);
    }
    case TailKind::Cauchy: return std::log(c_) + slow_->log_ell_at_log(v);
    case TailKind::None: break;
    }
    return detail::neg_inf<double>;
}

double OffspringModel::discrete_tail(std::int64_t k, int moment) const
{
    const double kd = static_cast<double>(k);
    if (tail_ == TailKind::Stable) {
        // sum_{j>=k} mu(j) = Gamma(k-a)/(a^2 Gamma(-a) Gamma(k)),
        // sum_{j>=k} j mu(j) = Gamma(k-a)/(a(a-1) Gamma(-a) Gamma(k-1))
        const double lg = std::log(std::tgamma(-alpha_));
        if (moment == 0)
            return std::exp(detail::log_gamma_delta_ratio(kd - alpha_, alpha_) - 2 * std::log(alpha_) - lg);
        return std::exp(detail::log_gamma_delta_ratio(kd - alpha_, alpha_ - 1) - std::log(alpha_ * (alpha_ - 1)) - lg);
    }
    if (tail_ == TailKind::Cauchy) {
        const double x = kd - 0.5;
        const double v = std::log(x);
        const double mu = std::exp(log_pmf_at_log(v));
        const double lam = slow_->dlog_dlog(v);
        if (moment == 0) return std::exp(log_tail_integral0(v)) + mu * (lam - 2) / x / 24;
        return std::exp(log_tail_integral1(v)) + mu * (lam - 1) / 24;
    }
    return 0.0;
}

double OffspringModel::tail_mass(std::int64_t k) const
{
    if (k <= 0) return suffix_mass_[0];
    if (k <= head_max() + 1) return suffix_mass_[static_cast<std::size_t>(k)];
    return discrete_tail(k, 0);
}

double OffspringModel::tail_mean(std::int64_t k) const
{
    if (k <= 0) return suffix_mean_[0];
    if (k <= head_max() + 1) return suffix_mean_[static_cast<std::size_t>(k)];
    return discrete_tail(k, 1);
}

double OffspringModel::total_mass() const { return suffix_mass_[0]; }
double OffspringModel::total_mean() const { return suffix_mean_[0]; }

double OffspringModel::variance() const
{
    if (tail_ != TailKind::None) return std::numeric_limits<double>::infinity();
    detail::CompensatedSum<double> m2;
    for (std::size_t k = 0; k < head_.size(); ++k) m2.add(static_cast<double>(k * k) * head_[k]);
    return m2.value() - 1.0;
}

double OffspringModel::regular_variation_constant() const
{
    switch (tail_) {
    case TailKind::None: return variance() / 2;
    case TailKind::Stable: return std::exp(-2 * std::log(alpha_) - std::log(std::tgamma(-alpha_)));
    case TailKind::Cauchy: break;
    }
    throw ParameterError("regular_variation_constant: Cauchy laws have a non-constant L");
}

OffspringModel make_finite(std::vector<double> pmf, std::string family)
{
    if (pmf.empty()) throw ParameterError("make_finite: empty pmf");
    while (pmf.size() > 1 && pmf.back() == 0.0) pmf.pop_back();
    detail::CompensatedSum<double> m0, m1;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        if (!(pmf[k] >= 0.0) || !std::isfinite(pmf[k])) throw ParameterError("make_finite: pmf entries must be in [0,1]");
        m0.add(pmf[k]);
        m1.add(static_cast<double>(k) * pmf[k]);
    }
    if (std::abs(m0.value() - 1.0) > 1e-12) throw ConstructionError("make_finite: pmf does not sum to 1");
    if (std::abs(m1.value() - 1.0) > 1e-10) throw ConstructionError("make_finite: law is not critical (mean != 1)");
    if (!(pmf[0] > 0.0)) throw ConstructionError("make_finite: mu(0) must be > 0");
    OffspringModel m;
    m.family_ = std::move(family);
    m.head_ = std::move(pmf);
    m.alpha_ = 2.0;
    m.finish();
    return m;
}

OffspringModel make_geometric()
{
    std::vector<double> pmf;
    double p = 0.5;
    for (int k = 0; p > 1e-19; ++k, p *= 0.5) pmf.push_back(p);
    return make_finite(std::move(pmf), "geometric");
}

OffspringModel make_stable(double alpha)
{
    if (!(alpha > 1.0 && alpha <= 2.0)) throw ParameterError("make_stable: alpha must lie in (1,2]");
    if (alpha == 2.0) return make_finite({0.5, 0.0, 0.5}, "stable");

    OffspringModel m;
    m.family_ = "stable";
    m.alpha_ = alpha;
    m.tail_ = TailKind::Stable;
    m.log_stable_const_ = -std::log(alpha * std::tgamma(-alpha));
    m.head_ = {1.0 / alpha, 0.0, (alpha - 1.0) / 2.0};
    double mu = m.head_.back();
    for (std::int64_t k = 2; k < OffspringModel::max_head; ++k) {
        if (k >= min_tail_head && mu < head_floor) break;
        mu = mu * (static_cast<double>(k) - alpha) / static_cast<double>(k + 1);
        m.head_.push_back(mu);
    }
    const std::int64_t K = m.head_max();
    m.beyond_mass_ = m.discrete_tail(K + 1, 0);
    m.beyond_mean_ = m.discrete_tail(K + 1, 1);
    m.finish();
    return m;
}

OffspringModel make_cauchy(SlowlyVarying l, std::int64_t n0, double c)
{
    check_cauchy_args(l, n0, c);
    const std::int64_t K = OffspringModel::max_head;
    const CauchySums sums = cauchy_sums(l, n0, K);
    const double mu1 = 1.0 - c * sums.mean;
    const double mu0 = c * (sums.mean - sums.mass);
    if (mu1 < 0.0)
        throw ConstructionError("make_cauchy: mu(1) = " + std::to_string(mu1) +
                                " < 0; c must be <= " + std::to_string(1.0 / sums.mean));
    if (!(mu0 > 0.0)) throw ConstructionError("make_cauchy: mu(0) <= 0");

    OffspringModel m;
    m.family_ = l.name();
    m.alpha_ = 1.0;
    m.tail_ = TailKind::Cauchy;
    m.slow_ = l;
    m.n0_ = n0;
    m.c_ = c;
    m.head_.assign(static_cast<std::size_t>(K + 1), 0.0);
    m.head_[0] = mu0;
    m.head_[1] = mu1;
    for (std::int64_t k = n0; k <= K; ++k) {
        const double lk = std::log(static_cast<double>(k));
        m.head_[static_cast<std::size_t>(k)] = c * std::exp(l.log_value_at_log(lk) - 2 * lk);
    }
    m.beyond_mass_ = c * sums.beyond_mass;
    m.beyond_mean_ = c * sums.beyond_mean;
    m.finish();
    return m;
}

double cauchy_scale_for_mu1(const SlowlyVarying& l, std::int64_t n0, double mu1)
{
    check_cauchy_args(l, n0, 1.0);
    if (!(mu1 >= 0.0 && mu1 < 1.0)) throw ParameterError("cauchy_scale_for_mu1: mu1 must lie in [0,1)");
    const CauchySums sums = cauchy_sums(l, n0, OffspringModel::max_head);
    return (1.0 - mu1) / sums.mean;
}

double default_cauchy_scale(const SlowlyVarying& l, std::int64_t n0) { return cauchy_scale_for_mu1(l, n0, 0.05); }

std::int64_t default_cauchy_cutoff(const SlowlyVarying& l)
{
    return l.family() == SlowFamily::LogOverLogLog ? 16 : 2;
}

} // namespace hsgw
