#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hsgw::detail {

template <class Real>
inline constexpr Real neg_inf = -std::numeric_limits<Real>::infinity();

// Neumaier compensated sum
template <class Real>
class CompensatedSum
{
public:
    void add(Real x)
    {
        const Real t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    Real value() const { return sum_ + comp_; }

private:
    Real sum_ = 0;
    Real comp_ = 0;
};

// value * exp(log_scale); keeps huge or tiny magnitudes representable
template <class Real>
struct Scaled
{
    Real log_scale = neg_inf<Real>;
    Real value = 0;

    static Scaled from_log(Real lg) { return {lg, lg == neg_inf<Real> ? Real(0) : Real(1)}; }

    Real log() const
    {
        if (value <= 0) return neg_inf<Real>;
        return log_scale + std::log(value);
    }

    Scaled& operator+=(const Scaled& o)
    {
        if (o.value == 0) return *this;
        if (value == 0) {
            *this = o;
            return *this;
        }
        if (o.log_scale > log_scale) {
            value = value * std::exp(log_scale - o.log_scale) + o.value;
            log_scale = o.log_scale;
        } else {
            value += o.value * std::exp(o.log_scale - log_scale);
        }
        return *this;
    }
};

template <class Real>
inline Real log_add_exp(Real a, Real b)
{
    if (a == neg_inf<Real>) return b;
    if (b == neg_inf<Real>) return a;
    const Real m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

// Bernoulli polynomials B_2..B_5
inline double bernoulli_poly(int n, double a)
{
    switch (n) {
    case 2: return a * a - a + 1.0 / 6.0;
    case 3: return a * a * a - 1.5 * a * a + 0.5 * a;
    case 4: return a * a * a * a - 2.0 * a * a * a + a * a - 1.0 / 30.0;
    case 5: return a * a * a * a * a - 2.5 * a * a * a * a + (5.0 / 3.0) * a * a * a - a / 6.0;
    default: return 0.0;
    }
}

// coefficients c_1..c_4 of lnG(x+a) - lnG(x+b) = (a-b) ln x + sum c_n x^{-n} + O(x^{-5})
struct GammaRatioSeries
{
    double power = 0;
    double c[4] = {0, 0, 0, 0};

    GammaRatioSeries(double a, double b) : power(a - b)
    {
        for (int n = 1; n <= 4; ++n) {
            const double sign = (n % 2 == 1) ? 1.0 : -1.0;
            c[n - 1] = sign * (bernoulli_poly(n + 1, a) - bernoulli_poly(n + 1, b)) / (n * (n + 1.0));
        }
    }

    // x = e^v, valid for x >= ~1000
    template <class Real>
    Real at_log(Real v) const
    {
        const Real inv = std::exp(-v);
        Real corr = 0;
        for (int n = 3; n >= 0; --n) corr = (corr + Real(c[n])) * inv;
        return Real(power) * v + corr;
    }
};

// ln(Gamma(x) / Gamma(x + d)) for moderate x > 0
inline double log_gamma_delta_ratio(double x, double d)
{
    if (x >= 1000.0) {
        GammaRatioSeries series(0.0, d);
        return series.at_log(std::log(x));
    }
    return std::log(boost::math::tgamma_delta_ratio(x, d));
}

// ln Gamma(a, z), upper incomplete gamma, a > 0
inline double log_upper_gamma(double a, double z)
{
    if (z < 500.0) return std::log(boost::math::tgamma(a, z));
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j < 200; ++j) {
        const double next = term * (a - j) / z;
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return (a - 1.0) * std::log(z) - z + std::log(sum);
}

// ln of integral over (0, inf) of exp(g(u)) for g(0) = 0 and g decreasing-ish
template <class Real, class F>
Real log_integral_halfline(F&& g, Real tol = Real(1e-14))
{
    boost::math::quadrature::exp_sinh<Real> integrator(12);
    Real error = 0;
    Real l1 = 0;
    auto f = [&](Real u) {
        const Real val = g(u);
        return val < Real(-700) ? Real(0) : std::exp(val);
    };
    const Real val = integrator.integrate(f, tol, &error, &l1);
    return std::log(val);
}

// adaptive Gauss-Kronrod on [a,b]; returns integral and writes the error estimate
template <class Real, class F>
Real gauss_kronrod(F&& f, Real a, Real b, Real tol, Real* error, unsigned max_depth = 12)
{
    // boost's termination test misbehaves on very narrow intervals (millions of panels for a
    // constant integrand on [0, 1e-6]), so integrate over the unit interval instead
    const Real width = b - a;
    auto unit = [&](Real u) { return f(a + width * u); };
    Real err = 0;
    const Real val = boost::math::quadrature::gauss_kronrod<Real, 31>::integrate(unit, Real(0), Real(1), max_depth, tol, &err);
    // boost reports the error in the [-1,1] frame; scale by the half-width
    if (error) *error = err * width / 2;
    return width * val;
}

} // namespace hsgw::detail
