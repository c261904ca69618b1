#pragma once

#include "hsgw/offspring.hpp"

namespace hsgw {

// a_n with a^alpha = n L(a), and the centring b_n = n E[W_1; |W_1| > a_n].
// For Cauchy laws L here is the effective c L of the offspring tail.
class NormingSequences
{
public:
    explicit NormingSequences(OffspringModel model);

    const OffspringModel& model() const { return model_; }

    double a(double n) const;
    double b(double n) const;
    // n ell(a_n), the first-order equivalent of b_n (Cauchy laws only)
    double b_asymptotic(double n) const;

    double L(double x) const;
    // integral_x^inf L(y)/y dy (Cauchy laws only)
    double ell(double x) const;

private:
    OffspringModel model_;
};

} // namespace hsgw
