#include "hsgw/generating.hpp"

#include "hsgw/error.hpp"
#include "numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <vector>

namespace hsgw {

namespace {

constexpr int n_moments = 16;
constexpr double moment_switch = 0.01;   // K sigma below this: expand the head in powers of sigma
constexpr double far_cut = 60.0;         // x sigma above this: exp(-x sigma) is negligible
constexpr double em_step = 1e-4;
// with an analytic tail the explicit head sum stops here; the rest goes through the tail quadrature
constexpr std::int64_t explicit_head = 2048;

enum Want : unsigned { WantP = 1, WantD = 2, WantF = 4, WantPP = 8 };

// s, sigma = -ln(1-s) and delta = sigma - s, all usable in log form when s underflows
template <class Real>
struct Point
{
    Real t = 0;
    Real s = 0;
    Real sigma = 0;
    Real ln_sigma = 0;
    Real ln_delta = 0;
};

// ln((sigma - s) / s^2) = ln(1/2 + s/3 + s^2/4 + ...)
template <class Real>
Real log_delta_ratio(Real s)
{
    Real sum = 0, pw = 1;
    for (int j = 0; j < 400; ++j) {
        const Real term = pw / Real(j + 2);
        sum += term;
        if (term < std::numeric_limits<Real>::epsilon() * sum) break;
        pw *= s;
    }
    return std::log(sum);
}

template <class Real>
Point<Real> point_from_s(Real s, Real t)
{
    Point<Real> pt;
    pt.s = s;
    pt.t = t;
    pt.sigma = t < Real(1) ? -std::log(-std::expm1(-t)) : -std::log1p(-s);
    pt.ln_sigma = std::log(pt.sigma);
    pt.ln_delta = s < Real(0.1) ? Real(-2) * t + log_delta_ratio(s) : std::log(pt.sigma - s);
    return pt;
}

template <class Real>
Point<Real> point_from_t(Real t)
{
    if (t > Real(650)) {
        Point<Real> pt;
        pt.t = t;
        pt.s = std::exp(-t);
        pt.sigma = pt.s;
        pt.ln_sigma = -t;
        pt.ln_delta = Real(-2) * t - std::numbers::ln2_v<Real>;
        return pt;
    }
    return point_from_s(std::exp(-t), t);
}

// e^-w - 1 + w
template <class Real>
Real phi2(Real w)
{
    if (w < Real(0.5)) {
        Real term = w * w / 2, sum = 0;
        for (int j = 2; j < 60; ++j) {
            sum += term;
            term *= -w / Real(j + 1);
            if (std::abs(term) < std::numeric_limits<Real>::epsilon() * sum) break;
        }
        return sum;
    }
    return std::expm1(-w) + w;
}

// 1 - e^-w (1 + w)
template <class Real>
Real phi3(Real w)
{
    if (w < Real(0.5)) {
        Real pw = w * w / 2, sum = 0;
        for (int j = 2; j < 60; ++j) {
            const Real term = Real(j - 1) * pw;
            sum += (j % 2 == 0) ? term : -term;
            pw *= w / Real(j + 1);
            if (Real(j) * pw < std::numeric_limits<Real>::epsilon() * sum) break;
        }
        return sum;
    }
    if (w > Real(1e4)) return Real(1);
    return -std::expm1(-w) - w * std::exp(-w);
}

template <class Real>
Real log_phi2(Real lw)
{
    const Real w = std::exp(lw);
    if (lw < Real(-20)) return 2 * lw - std::numbers::ln2_v<Real> + std::log1p(-w / 3);
    return std::log(phi2(w));
}

template <class Real>
Real log_phi3(Real lw)
{
    const Real w = std::exp(lw);
    if (lw < Real(-20)) return 2 * lw - std::numbers::ln2_v<Real> + std::log1p(-2 * w / 3);
    return std::log(phi3(w));
}

// ln(1 - e^-w)
template <class Real>
Real log_one_minus_exp(Real lw)
{
    const Real w = std::exp(lw);
    if (lw < Real(-20)) return lw + std::log1p(-w / 2);
    return std::log(-std::expm1(-w));
}

// signed sum of terms held as logs; keeps an absolute error budget on the same scale
template <class Real>
class LogAccumulator
{
public:
    void add(Real log_mag, int sign, Real log_err)
    {
        if (log_mag == detail::neg_inf<Real> && log_err == detail::neg_inf<Real>) return;
        items_.push_back({log_mag, sign, log_err});
    }

    Real log_value() const
    {
        const auto [ref, val, err] = reduce();
        return val > 0 ? ref + std::log(val) : std::numeric_limits<Real>::quiet_NaN();
    }

    Real relative_error() const
    {
        const auto [ref, val, err] = reduce();
        return val > 0 ? err / val : std::numeric_limits<Real>::infinity();
    }

private:
    struct Item
    {
        Real log_mag;
        int sign;
        Real log_err;
    };

    std::array<Real, 3> reduce() const
    {
        Real ref = detail::neg_inf<Real>;
        for (const auto& it : items_) ref = std::max(ref, it.log_mag);
        Real val = 0, err = 0;
        for (const auto& it : items_) {
            if (it.log_mag != detail::neg_inf<Real>) val += Real(it.sign) * std::exp(it.log_mag - ref);
            if (it.log_err != detail::neg_inf<Real>) err += std::exp(it.log_err - ref);
        }
        return {ref, val, err};
    }

    std::vector<Item> items_;
};

template <class Real>
struct Accumulators
{
    LogAccumulator<Real> p, d, f, pp;

    LogAccumulator<Real>& get(Want w)
    {
        switch (w) {
        case WantP: return p;
        case WantD: return d;
        case WantF: return f;
        case WantPP: return pp;
        }
        return p;
    }
};

template <class Real>
Real log_or_neg_inf(Real x)
{
    return x > 0 ? std::log(x) : detail::neg_inf<Real>;
}

} // namespace

struct GeneratingOracle::Impl
{
    OffspringModel model;
    PrecisionMode mode;
    double series_tolerance;
    // head moments over k >= 2, m = k - 1
    std::array<long double, n_moments + 2> P{};    // sum mu k m^j
    std::array<long double, n_moments + 2> D{};    // sum mu m^j
    std::array<long double, n_moments + 2> M{};    // sum mu k^j
    std::array<long double, n_moments + 2> PP{};   // sum mu k (k-1) (k-2)^j
    std::int64_t split;                            // last k summed explicitly
    // upsilon integrals over the full segments [0,1], [1,10], [10,100], ...
    mutable std::mutex segment_mutex;
    mutable std::vector<double> segment_integrals;

    Impl(OffspringModel m, PrecisionMode md, double tol)
        : model(std::move(m)), mode(md), series_tolerance(tol),
          split(model.tail_kind() == TailKind::None ? model.head_max() : std::min(model.head_max(), explicit_head))
    {
        const auto head = model.head().first(static_cast<std::size_t>(split) + 1);
        for (std::size_t k = 2; k < head.size(); ++k) {
            const long double mu = head[k];
            if (mu == 0) continue;
            const long double kk = static_cast<long double>(k);
            long double mj = 1, kj = 1, qj = 1;
            for (int j = 0; j < n_moments + 2; ++j) {
                P[j] += mu * kk * mj;
                D[j] += mu * mj;
                M[j] += mu * kj;
                PP[j] += mu * kk * (kk - 1) * qj;
                mj *= kk - 1;
                kj *= kk;
                qj *= kk - 2;
            }
        }
    }

    double head_k() const { return static_cast<double>(split); }

    // sum_{j >= j0} (-sigma)^(j - j0) coef_j mom[j + shift] / j!
    template <class Real>
    static std::pair<Real, Real> moment_series(const std::array<long double, n_moments + 2>& mom, int j0, int shift,
                                               Real sg, bool phi3_weights)
    {
        Real sum = 0, last = 0, pw = 1, fact = 1;
        for (int j = 2; j < j0; ++j) fact *= Real(j);
        for (int j = j0; j + shift <= n_moments + 1; ++j) {
            if (j > 1) fact *= Real(j);
            const Real w = phi3_weights ? Real(j - 1) : Real(1);
            last = w * Real(mom[j + shift]) * pw / fact;
            sum += last;
            pw *= -sg;
        }
        return {sum, std::abs(last) + 4 * std::numeric_limits<Real>::epsilon() * std::abs(sum)};
    }

    template <class Real>
    void head_moments(const Point<Real>& pt, unsigned want, Accumulators<Real>& acc) const
    {
        // sigma may underflow to 0; then only the leading terms survive
        const Real sg = pt.sigma;
        auto add = [&](LogAccumulator<Real>& a, Real log_scale, std::pair<Real, Real> s, int sign = 1) {
            if (s.first <= 0) return;
            a.add(log_scale + std::log(s.first), sign, log_scale + log_or_neg_inf(s.second));
        };
        if (want & WantP) add(acc.p, pt.ln_sigma, moment_series<Real>(P, 1, 0, sg, false));
        if (want & WantD) {
            add(acc.d, 2 * pt.ln_sigma, moment_series<Real>(D, 2, 0, sg, true));
            add(acc.d, pt.ln_delta, moment_series<Real>(D, 0, 1, sg, false));
        }
        if (want & WantF) {
            add(acc.f, 2 * pt.ln_sigma, moment_series<Real>(M, 2, 0, sg, false));
            const Real m1 = Real(M[1]);
            add(acc.f, pt.ln_delta, {m1, 4 * std::numeric_limits<Real>::epsilon() * m1}, -1);
        }
        if (want & WantPP) add(acc.pp, Real(0), moment_series<Real>(PP, 0, 0, sg, false));
    }

    template <class Real>
    void head_linear(const Point<Real>& pt, unsigned want, Accumulators<Real>& acc) const
    {
        const auto head = model.head().first(static_cast<std::size_t>(split) + 1);
        const Real sigma = pt.sigma;
        const Real delta = std::exp(pt.ln_delta);
        const bool compensated = mode != PrecisionMode::Double;
        detail::CompensatedSum<Real> cp, cd, cf, cpp;
        Real sp = 0, sd = 0, sf = 0, spp = 0, abs_f = 0;
        auto put = [&](detail::CompensatedSum<Real>& c, Real& plain, Real x) {
            if (compensated)
                c.add(x);
            else
                plain += x;
        };
        std::size_t used = 0;
        for (std::size_t k = 2; k < head.size(); ++k) {
            const Real mu = head[k];
            if (mu == 0) continue;
            ++used;
            const Real kk = Real(k);
            const Real m = kk - 1;
            const Real w = m * sigma;
            const Real em1 = std::expm1(-w);
            const Real em = w < Real(1) ? 1 + em1 : std::exp(-w);
            if (want & WantP) put(cp, sp, mu * kk * -em1);
            if (want & WantD) put(cd, sd, mu * (phi3(w) + em * m * delta));
            if (want & WantF) {
                const Real a = mu * phi2(kk * sigma);
                const Real b = mu * kk * delta;
                put(cf, sf, a - b);
                abs_f += a + b;
            }
            if (want & WantPP) put(cpp, spp, mu * kk * m * std::exp(-(kk - 2) * sigma));
        }
        const Real eps = std::numeric_limits<Real>::epsilon();
        const Real growth = compensated ? Real(8) : Real(used + 4);
        auto add = [&](LogAccumulator<Real>& a, Real v, Real scale) {
            if (v > 0) a.add(std::log(v), 1, log_or_neg_inf(growth * eps * scale));
        };
        if (want & WantP) add(acc.p, compensated ? cp.value() : sp, compensated ? cp.value() : sp);
        if (want & WantD) add(acc.d, compensated ? cd.value() : sd, compensated ? cd.value() : sd);
        if (want & WantF) add(acc.f, compensated ? cf.value() : sf, abs_f);
        if (want & WantPP) add(acc.pp, compensated ? cpp.value() : spp, compensated ? cpp.value() : spp);
    }

    // ln of the k-th summand without mu, evaluated at real k = e^v
    template <class Real>
    Real log_term(Want q, const Point<Real>& pt, Real v) const
    {
        const Real x = std::exp(v);
        const Real ln_m = v + std::log1p(-std::exp(-v));
        switch (q) {
        case WantP: return v + log_one_minus_exp(ln_m + pt.ln_sigma);
        case WantD: {
            const Real lw = ln_m + pt.ln_sigma;
            return detail::log_add_exp(log_phi3(lw), -std::exp(lw) + ln_m + pt.ln_delta);
        }
        case WantF: {
            const Real lp2 = log_phi2(v + pt.ln_sigma);
            const Real r = std::exp(v + pt.ln_delta - lp2);
            return r < 1 ? lp2 + std::log1p(-r) : detail::neg_inf<Real>;
        }
        case WantPP: return v + ln_m - std::exp(std::log(x - 2) + pt.ln_sigma);
        }
        return 0;
    }

    template <class Real>
    void tail(const Point<Real>& pt, unsigned want, Accumulators<Real>& acc) const
    {
        const Real x0 = Real(split) + Real(0.5);
        const Real v0 = std::log(x0);
        const Real ts = -pt.ln_sigma;
        const Real v1 = std::max(v0, std::log(Real(far_cut)) + ts);
        const Real eps = std::numeric_limits<Real>::epsilon();

        std::vector<Real> cuts{v0};
        for (Real back : {3000, 1000, 300, 100, 30, 10, 3, 0}) {
            const Real b = ts - back;
            if (b > cuts.back() && b < v1) cuts.push_back(b);
        }
        if (v1 > cuts.back()) cuts.push_back(v1);

        for (Want q : {WantP, WantD, WantF, WantPP}) {
            if (!(want & q)) continue;
            auto& a = acc.get(q);
            auto ln_h = [&](Real v) { return Real(model.log_pmf_at_log(double(v))) + v + log_term(q, pt, v); };

            if (cuts.size() > 1) {
                std::vector<Real> ln_at(cuts.size());
                for (std::size_t i = 0; i < cuts.size(); ++i) ln_at[i] = ln_h(cuts[i]);
                const Real ref = *std::max_element(ln_at.begin(), ln_at.end());
                if (ref != detail::neg_inf<Real>) {
                    auto h = [&](Real v) {
                        const Real lh = ln_h(v) - ref;
                        return lh < Real(-700) ? Real(0) : std::exp(lh);
                    };
                    // one fixed-order pass sizes the segments so the adaptive pass targets the sum, not each piece
                    std::vector<Real> rough(cuts.size() - 1);
                    Real rough_total = 0, err = 0;
                    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                        // left of the peak the integrand rises, so the right end bounds the segment
                        const Real bound = std::exp(std::max(ln_at[i], ln_at[i + 1]) - ref) * (cuts[i + 1] - cuts[i]);
                        if (cuts[i + 1] <= ts - 30 && bound < Real(1e-18)) {
                            err += bound;
                            continue;
                        }
                        rough[i] = std::abs(detail::gauss_kronrod<Real>(h, cuts[i], cuts[i + 1], Real(1), nullptr, 0));
                        rough_total += rough[i];
                    }
                    // exp of a log of size |ref| carries relative noise ~ eps |ref|; do not chase below that
                    const Real floor = std::max(Real(1e-13), 16 * eps * std::max(std::abs(ref), v1));
                    Real total = 0;
                    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                        if (rough[i] == 0) continue;
                        const Real tol = std::clamp(floor * rough_total / rough[i], floor, Real(1e-3));
                        Real e = 0;
                        total += detail::gauss_kronrod<Real>(h, cuts[i], cuts[i + 1], tol, &e, 15);
                        err += std::abs(e);
                    }
                    if (total > 0) a.add(ref + std::log(total), 1, ref + log_or_neg_inf(err + 4 * eps * total));
                }
            }

            // far region: exp(-x sigma) dropped
            const Real li0 = Real(model.log_tail_integral0(double(v1)));
            const Real li1 = Real(model.log_tail_integral1(double(v1)));
            const Real drop = Real(-far_cut) + std::log(Real(far_cut) + 2);
            switch (q) {
            case WantP: a.add(li1, 1, li1 + std::log(Real(1e-14) + std::exp(drop))); break;
            case WantD: a.add(li0, 1, li0 + std::log(Real(1e-14) + std::exp(drop))); break;
            case WantF:
                a.add(-pt.t + li1, 1, -pt.t + li1 + std::log(Real(1e-14) + std::exp(drop)));
                a.add(li0, -1, li0 + std::log(Real(1e-14)));
                break;
            case WantPP: break;
            }

            // Euler-Maclaurin: sum_{k > K} g(k) = integral from K + 1/2 + g'(K + 1/2) / 24
            Real scale = x0;
            if (x0 * pt.sigma < Real(far_cut) && pt.sigma > 0) scale = std::min(x0, Real(1) / pt.sigma);
            const Real h = Real(em_step) * scale;
            auto ln_g = [&](Real x) {
                const Real v = std::log(x);
                return Real(model.log_pmf_at_log(double(v))) + log_term(q, pt, v);
            };
            const Real lg0 = ln_g(x0);
            if (lg0 != detail::neg_inf<Real>) {
                const Real dlg = (ln_g(x0 + h) - ln_g(x0 - h)) / (2 * h);
                const Real corr_mag = std::abs(dlg) / 24;
                if (corr_mag > 0) {
                    const Real lc = lg0 + std::log(corr_mag);
                    a.add(lc, dlg < 0 ? -1 : 1, lc + std::log(Real(10) / (x0 * x0) + Real(1e-6)));
                }
            }
        }
    }

    template <class Real>
    Accumulators<Real> evaluate(const Point<Real>& pt, unsigned want) const
    {
        Accumulators<Real> acc;
        const Real ks = Real(head_k()) * pt.sigma;
        if (ks < Real(moment_switch))
            head_moments(pt, want, acc);
        else
            head_linear(pt, want, acc);
        if (model.tail_kind() != TailKind::None) tail(pt, want, acc);
        return acc;
    }

    template <class Real>
    LambdaReport lambda_from(const Point<Real>& pt) const
    {
        auto acc = evaluate(pt, WantP | WantD);
        const Real lp = acc.p.log_value();
        const Real ld = acc.d.log_value();
        LambdaReport r;
        r.log_lambda = double(-pt.t + lp - ld);
        const Real abs_err = acc.p.relative_error() + acc.d.relative_error();
        r.relative_error = std::isfinite(r.log_lambda) ? double(abs_err) / std::abs(r.log_lambda)
                                                       : std::numeric_limits<double>::infinity();
        return r;
    }

    LambdaReport lambda_at_s1() const
    {
        const double mu0 = model.pmf(0), mu1 = model.pmf(1);
        LambdaReport r;
        r.log_lambda = std::log1p(-mu1) - std::log1p(-mu1 - mu0);
        r.relative_error = 4 * std::numeric_limits<double>::epsilon();
        return r;
    }

    template <class MakePoint>
    LambdaReport lambda_with_retry(MakePoint make) const
    {
        LambdaReport r;
        if (mode == PrecisionMode::Extended) {
            r = lambda_from(make(static_cast<long double*>(nullptr)));
            r.extended = true;
        } else {
            r = lambda_from(make(static_cast<double*>(nullptr)));
            if (!(r.relative_error <= GeneratingOracle::precision_tolerance)) {
                r = lambda_from(make(static_cast<long double*>(nullptr)));
                r.extended = true;
            }
        }
        r.ok = r.relative_error <= GeneratingOracle::precision_tolerance;
        return r;
    }

    double log_quantity(Want q, double t) const
    {
        if (mode == PrecisionMode::Extended) {
            auto acc = evaluate(point_from_t<long double>(t), q);
            return double(acc.get(q).log_value());
        }
        auto acc = evaluate(point_from_t<double>(t), q);
        return acc.get(q).log_value();
    }

    double log_quantity_s(Want q, double s) const
    {
        if (mode == PrecisionMode::Extended) {
            const long double sl = s;
            auto acc = evaluate(point_from_s<long double>(sl, -std::log(sl)), q);
            return double(acc.get(q).log_value());
        }
        auto acc = evaluate(point_from_s<double>(s, -std::log(s)), q);
        return acc.get(q).log_value();
    }
};

double LambdaReport::value() const { return std::exp(log_lambda); }

GeneratingOracle::GeneratingOracle(OffspringModel model, PrecisionMode mode, double series_tolerance)
    : impl_(std::make_shared<const Impl>(std::move(model), mode, series_tolerance))
{
}

const OffspringModel& GeneratingOracle::model() const { return impl_->model; }
PrecisionMode GeneratingOracle::mode() const { return impl_->mode; }
double GeneratingOracle::series_tolerance() const { return impl_->series_tolerance; }

namespace {

void check_closed_unit(double s, const char* what)
{
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError(std::string(what) + ": s must lie in [0,1]");
}

void check_open_unit(double s, const char* what)
{
    if (!(s > 0.0 && s < 1.0)) throw DomainError(std::string(what) + ": s must lie in (0,1)");
}

void check_t(double t, const char* what)
{
    if (!(t >= 0.0) || std::isinf(t)) throw DomainError(std::string(what) + ": t = -ln s must be finite and >= 0");
}

} // namespace

double GeneratingOracle::phi(double s) const
{
    check_closed_unit(s, "phi");
    return s + psi(1.0 - s);
}

double GeneratingOracle::phi_truncation_bound(double s) const
{
    check_closed_unit(s, "phi_truncation_bound");
    // phi(s) = s + psi(1 - s); the endpoints are exact
    if (s == 0.0 || s == 1.0) return 0.0;
    const double u = 1.0 - s;
    const auto acc = impl_->evaluate(point_from_s<double>(u, -std::log(u)), WantF);
    return std::exp(acc.f.log_value()) * acc.f.relative_error();
}

double GeneratingOracle::psi(double s) const
{
    check_closed_unit(s, "psi");
    if (s == 0.0) return 0.0;
    if (s == 1.0) return impl_->model.pmf(0);
    return std::exp(impl_->log_quantity_s(WantF, s));
}

double GeneratingOracle::psi_prime(double s) const
{
    check_closed_unit(s, "psi_prime");
    if (s == 0.0) return 0.0;
    if (s == 1.0) return 1.0 - impl_->model.pmf(1);
    return std::exp(impl_->log_quantity_s(WantP, s));
}

double GeneratingOracle::psi_second(double s) const
{
    check_closed_unit(s, "psi_second");
    if (s == 0.0) return impl_->model.variance();
    if (s == 1.0) return 2.0 * impl_->model.pmf(2);
    return std::exp(impl_->log_quantity_s(WantPP, s));
}

double GeneratingOracle::log_psi_at(double t) const
{
    check_t(t, "log_psi_at");
    if (t == 0.0) return std::log(impl_->model.pmf(0));
    return impl_->log_quantity(WantF, t);
}

double GeneratingOracle::log_psi_prime_at(double t) const
{
    check_t(t, "log_psi_prime_at");
    if (t == 0.0) return std::log1p(-impl_->model.pmf(1));
    return impl_->log_quantity(WantP, t);
}

double GeneratingOracle::log_psi_second_at(double t) const
{
    check_t(t, "log_psi_second_at");
    if (t == 0.0) return std::log(2.0 * impl_->model.pmf(2));
    return impl_->log_quantity(WantPP, t);
}

LambdaReport GeneratingOracle::lambda_report(double s) const
{
    check_open_unit(s, "lambda");
    return impl_->lambda_with_retry([s](auto* tag) {
        using Real = std::remove_pointer_t<decltype(tag)>;
        const Real sr = s;
        return point_from_s<Real>(sr, -std::log(sr));
    });
}

LambdaReport GeneratingOracle::log_lambda_at(double t) const
{
    check_t(t, "log_lambda_at");
    if (t == 0.0) return impl_->lambda_at_s1();
    return impl_->lambda_with_retry([t](auto* tag) {
        using Real = std::remove_pointer_t<decltype(tag)>;
        return point_from_t<Real>(Real(t));
    });
}

double GeneratingOracle::lambda(double s) const
{
    const auto r = lambda_report(s);
    if (!r.ok) throw PrecisionError("lambda: estimated relative error too large even in extended precision", r.relative_error);
    return r.value();
}

double GeneratingOracle::upsilon(double s) const
{
    check_open_unit(s, "upsilon");
    return upsilon_at(-std::log(s));
}

double GeneratingOracle::upsilon_at(double t) const
{
    check_t(t, "upsilon_at");
    if (t == 0.0) return 0.0;
    auto integrand = [this](double x) { return 1.0 / log_lambda_at(x).log_lambda; };
    auto integrate = [&](double lo, double hi) {
        double err = 0;
        return detail::gauss_kronrod<double>(integrand, lo, hi, 1e-11, &err, 15);
    };
    auto segment_end = [](std::size_t i) { return std::pow(10.0, double(i)); };

    std::size_t full = 0;
    while (segment_end(full) <= t) ++full;
    double total = 0;
    {
        std::lock_guard lock(impl_->segment_mutex);
        auto& cache = impl_->segment_integrals;
        while (cache.size() < full) {
            const std::size_t i = cache.size();
            cache.push_back(integrate(i == 0 ? 0.0 : segment_end(i - 1), segment_end(i)));
        }
        for (std::size_t i = 0; i < full; ++i) total += cache[i];
    }
    const double lo = full == 0 ? 0.0 : segment_end(full - 1);
    if (lo < t) total += integrate(lo, t);
    return total;
}

} // namespace hsgw
