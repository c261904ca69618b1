#pragma once

#include <string>

namespace hsgw {

enum class SlowFamily { LogPower, ExpLogPower, LogOverLogLog };

// Slowly varying L with finite integral of L(y)/y at infinity.
//   LogPower(kappa > 0):        L(x) = (ln x)^(-1-kappa)
//   ExpLogPower(0 < kappa < 1): L(x) = exp(-(ln x)^kappa)
//   LogOverLogLog:              L(x) = exp(-ln x / ln ln x), x > e^e
// Everything is parametrised by v = ln x so arguments far beyond double range work.
class SlowlyVarying
{
public:
    static SlowlyVarying log_power(double kappa);
    static SlowlyVarying exp_log_power(double kappa);
    static SlowlyVarying log_over_log_log();

    SlowFamily family() const { return family_; }
    double kappa() const { return kappa_; }
    std::string name() const;

    // smallest admissible ln x
    double min_log_argument() const;

    double log_value_at_log(double v) const;   // ln L(e^v)
    double dlog_dlog(double v) const;          // d ln L / d v
    double operator()(double x) const;         // L(x)

    // ln of ell(e^v) = integral_{e^v}^inf L(y)/y dy
    double log_ell_at_log(double v) const;
    double ell(double x) const;

private:
    SlowlyVarying(SlowFamily f, double k) : family_(f), kappa_(k) {}
    void check_log_argument(double v) const;

    SlowFamily family_;
    double kappa_;
};

} // namespace hsgw
