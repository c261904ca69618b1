#pragma once

#include "hsgw/offspring.hpp"

#include <memory>

namespace hsgw {

enum class PrecisionMode { Double, Compensated, Extended };

struct LambdaReport
{
    double log_lambda = 0;       // ln Lambda(s)
    double relative_error = 0;   // estimated relative error of ln Lambda
    bool extended = false;       // long double pass was needed
    bool ok = true;              // relative_error within GeneratingOracle::precision_tolerance

    double value() const;
};

// phi, psi(s) = phi(1-s) - (1-s), its derivatives, Lambda and Upsilon for one offspring law.
// The *_at(t) entry points take t = -ln s so that s far below the double range is usable.
// Immutable; copies share state.
class GeneratingOracle
{
public:
    static constexpr double precision_tolerance = 1e-6;

    explicit GeneratingOracle(OffspringModel model, PrecisionMode mode = PrecisionMode::Compensated,
                              double series_tolerance = 1e-14);

    const OffspringModel& model() const;
    PrecisionMode mode() const;
    double series_tolerance() const;

    double phi(double s) const;
    // error bound for phi(s): head sum plus analytic tail remainder against the full series
    double phi_truncation_bound(double s) const;
    double psi(double s) const;
    double psi_prime(double s) const;
    double psi_second(double s) const;

    // s psi'(s) / (s psi'(s) - psi(s)); throws PrecisionError if even the extended pass is too inaccurate
    double lambda(double s) const;
    LambdaReport lambda_report(double s) const;
    LambdaReport log_lambda_at(double t) const;

    // integral_s^1 dr / (r ln Lambda(r))
    double upsilon(double s) const;
    double upsilon_at(double t) const;

    double log_psi_at(double t) const;
    double log_psi_prime_at(double t) const;
    double log_psi_second_at(double t) const;

    struct Impl;

private:
    std::shared_ptr<const Impl> impl_;
};

} // namespace hsgw
