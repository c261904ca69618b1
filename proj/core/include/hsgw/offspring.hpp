#pragma once

#include "hsgw/slowly_varying.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hsgw {

enum class TailKind { None, Stable, Cauchy };

// Critical offspring law: explicit head mu(0..K) plus an analytic tail for k > K.
class OffspringModel
{
public:
    static constexpr std::int64_t max_head = 16384;

    std::string family() const;
    double alpha() const { return alpha_; }
    TailKind tail_kind() const { return tail_; }
    const std::optional<SlowlyVarying>& slowly_varying() const { return slow_; }
    std::int64_t cutoff() const { return n0_; }   // Cauchy n0
    double scale() const { return c_; }           // Cauchy c

    std::span<const double> head() const { return head_; }
    std::int64_t head_max() const { return static_cast<std::int64_t>(head_.size()) - 1; }

    double pmf(std::int64_t k) const;
    // sum_{j >= k} mu(j) and sum_{j >= k} j mu(j)
    double tail_mass(std::int64_t k) const;
    double tail_mean(std::int64_t k) const;
    // mass and mean beyond the head
    double beyond_mass() const { return beyond_mass_; }
    double beyond_mean() const { return beyond_mean_; }

    // continuous extension of the tail, x = e^v > K: ln mu(x)
    double log_pmf_at_log(double v) const;
    double dlog_pmf_dlog(double v) const;
    // ln integral_{e^v}^inf mu(x) dx and ln integral_{e^v}^inf x mu(x) dx, e^v > K
    double log_tail_integral0(double v) const;
    double log_tail_integral1(double v) const;

    double total_mass() const;
    double total_mean() const;
    // sigma^2 when finite (no tail), +inf otherwise
    double variance() const;

    // constant L in mu([n,inf)) ~ n^-alpha L for the stable tail, sigma^2/2 for alpha = 2
    double regular_variation_constant() const;

private:
    friend OffspringModel make_stable(double);
    friend OffspringModel make_cauchy(SlowlyVarying, std::int64_t, double);
    friend OffspringModel make_finite(std::vector<double>, std::string);

    OffspringModel() = default;
    void finish();
    double discrete_tail(std::int64_t k, int moment) const;

    std::string family_;
    std::vector<double> head_;
    std::vector<double> suffix_mass_;   // sum_{j >= k}, j <= K
    std::vector<double> suffix_mean_;
    double beyond_mass_ = 0;
    double beyond_mean_ = 0;
    TailKind tail_ = TailKind::None;
    double alpha_ = 2;
    double log_stable_const_ = 0;       // ln(1 / (alpha Gamma(-alpha)))
    std::optional<SlowlyVarying> slow_;
    std::int64_t n0_ = 0;
    double c_ = 0;
};

// mu_alpha with phi(s) = s + (1-s)^alpha / alpha, alpha in (1,2]
OffspringModel make_stable(double alpha);
// mu(k) = c L(k)/k^2 for k >= n0; mu(0), mu(1) fixed by sum mu = 1 and sum k mu = 1
OffspringModel make_cauchy(SlowlyVarying l, std::int64_t n0, double c);
// finite support law; must be critical with mu(0) > 0
OffspringModel make_finite(std::vector<double> pmf, std::string family = "finite");
// mu(k) = 2^(-k-1): uniform plane trees under size conditioning
OffspringModel make_geometric();

// largest feasible c gives mu(1) = 0; the default leaves mu(1) = 0.05
double cauchy_scale_for_mu1(const SlowlyVarying& l, std::int64_t n0, double mu1);
double default_cauchy_scale(const SlowlyVarying& l, std::int64_t n0);
std::int64_t default_cauchy_cutoff(const SlowlyVarying& l);

} // namespace hsgw
