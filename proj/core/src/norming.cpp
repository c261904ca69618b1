#include "hsgw/norming.hpp"

#include "hsgw/error.hpp"

#include <cmath>

namespace hsgw {

NormingSequences::NormingSequences(OffspringModel model) : model_(std::move(model)) {}

double NormingSequences::L(double x) const
{
    if (model_.tail_kind() == TailKind::Cauchy) return model_.scale() * (*model_.slowly_varying())(x);
    return model_.regular_variation_constant();
}

double NormingSequences::ell(double x) const
{
    if (model_.tail_kind() != TailKind::Cauchy) throw ParameterError("ell: only defined for Cauchy-regime laws");
    return model_.scale() * model_.slowly_varying()->ell(x);
}

double NormingSequences::a(double n) const
{
    if (!(n >= 2)) throw ParameterError("norming: n must be >= 2");
    if (model_.tail_kind() != TailKind::Cauchy) {
        const double alpha = model_.alpha();
        return std::pow(n * model_.regular_variation_constant(), 1.0 / alpha);
    }
    // Newton on y = ln a:  y - ln n - ln c - ln L(e^y) = 0
    const auto& l = *model_.slowly_varying();
    const double target = std::log(n) + std::log(model_.scale());
    const double floor = l.min_log_argument() + 1e-9;
    double y = std::max(target, floor + 1.0);
    double residual = 0;
    for (int it = 0; it < 200; ++it) {
        const double f = y - target - l.log_value_at_log(y);
        residual = f;
        if (std::abs(f) <= 1e-13 * std::max(1.0, std::abs(y))) return std::exp(y);
        const double fp = 1.0 - l.dlog_dlog(y);
        y = std::max(y - f / fp, 0.5 * (y + floor));
    }
    throw NumericError("norming: a_n iteration did not converge", residual);
}

double NormingSequences::b(double n) const
{
    const double an = a(n);
    // W_1 = k - 1 > a_n  <=>  k >= floor(a_n) + 2
    const auto j0 = static_cast<std::int64_t>(std::floor(an)) + 2;
    return n * (model_.tail_mean(j0) - model_.tail_mass(j0));
}

double NormingSequences::b_asymptotic(double n) const { return n * ell(a(n)); }

} // namespace hsgw
