#include "hsgw/slowly_varying.hpp"

#include "hsgw/error.hpp"
#include "numerics.hpp"

#include <cmath>
#include <numbers>

namespace hsgw {

SlowlyVarying SlowlyVarying::log_power(double kappa)
{
    if (!(kappa > 0) || !std::isfinite(kappa)) throw ParameterError("log_power: kappa must be > 0");
    return {SlowFamily::LogPower, kappa};
}

SlowlyVarying SlowlyVarying::exp_log_power(double kappa)
{
    if (!(kappa > 0 && kappa < 1)) throw ParameterError("exp_log_power: kappa must lie in (0,1)");
    return {SlowFamily::ExpLogPower, kappa};
}

SlowlyVarying SlowlyVarying::log_over_log_log() { return {SlowFamily::LogOverLogLog, 0.0}; }

std::string SlowlyVarying::name() const
{
    switch (family_) {
    case SlowFamily::LogPower: return "log_power";
    case SlowFamily::ExpLogPower: return "exp_log_power";
    case SlowFamily::LogOverLogLog: return "log_over_log_log";
    }
    return "?";
}

double SlowlyVarying::min_log_argument() const
{
    // ln ln x > 1 keeps x / ln ln x increasing for the last family
    return family_ == SlowFamily::LogOverLogLog ? std::numbers::e : 0.0;
}

void SlowlyVarying::check_log_argument(double v) const
{
    if (!(v > min_log_argument())) throw DomainError(name() + ": argument below the domain of L");
}

double SlowlyVarying::log_value_at_log(double v) const
{
    check_log_argument(v);
    switch (family_) {
    case SlowFamily::LogPower: return -(1.0 + kappa_) * std::log(v);
    case SlowFamily::ExpLogPower: return -std::pow(v, kappa_);
    case SlowFamily::LogOverLogLog: return -v / std::log(v);
    }
    return 0;
}

double SlowlyVarying::dlog_dlog(double v) const
{
    check_log_argument(v);
    switch (family_) {
    case SlowFamily::LogPower: return -(1.0 + kappa_) / v;
    case SlowFamily::ExpLogPower: return -kappa_ * std::pow(v, kappa_ - 1.0);
    case SlowFamily::LogOverLogLog: {
        const double lv = std::log(v);
        return -(lv - 1.0) / (lv * lv);
    }
    }
    return 0;
}

double SlowlyVarying::operator()(double x) const { return std::exp(log_value_at_log(std::log(x))); }

double SlowlyVarying::log_ell_at_log(double v) const
{
    check_log_argument(v);
    switch (family_) {
    case SlowFamily::LogPower: return -kappa_ * std::log(v) - std::log(kappa_);
    case SlowFamily::ExpLogPower:
        return detail::log_upper_gamma(1.0 / kappa_, std::pow(v, kappa_)) - std::log(kappa_);
    case SlowFamily::LogOverLogLog: {
        const double g0 = log_value_at_log(v);
        return g0 + detail::log_integral_halfline<double>(
                        [&](double u) { return log_value_at_log(v + u) - g0; });
    }
    }
    return 0;
}

double SlowlyVarying::ell(double x) const { return std::exp(log_ell_at_log(std::log(x))); }

} // namespace hsgw
