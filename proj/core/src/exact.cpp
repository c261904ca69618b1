#include "hsgw/exact.hpp"

#include "hsgw/enumerate.hpp"
#include "hsgw/error.hpp"

#include <cmath>

namespace hsgw {

double TailTable::log_q(std::int64_t n) const
{
    if (n < 0) return 0.0;
    if (n > max_n()) throw ParameterError("TailTable: n beyond the table");
    return -Q[static_cast<std::size_t>(n)];
}

double TailTable::q(std::int64_t n) const { return std::exp(log_q(n)); }

double TailTable::strahler_pmf(std::int64_t n) const
{
    if (n < 0) return 0.0;
    // q_{n-1} (1 - e^{-(Q_n - Q_{n-1})})
    const double prev = n == 0 ? 0.0 : Q[static_cast<std::size_t>(n - 1)];
    if (n > max_n()) throw ParameterError("TailTable: n beyond the table");
    return std::exp(-prev) * -std::expm1(prev - Q[static_cast<std::size_t>(n)]);
}

TailTable tail_table(const GeneratingOracle& oracle, std::int64_t N)
{
    if (N < 0) throw ParameterError("tail_table: N must be >= 0");
    const auto& m = oracle.model();
    TailTable t;
    t.Q.reserve(static_cast<std::size_t>(N) + 1);
    // 1 - q_0 = mu(0) / (1 - mu(1)),  so  q_0 = sum_{k >= 2} mu(k) / (1 - mu(1))
    const double q0_num = m.tail_mass(2);
    t.Q.push_back(std::log1p(-m.pmf(1)) - std::log(q0_num));
    t.error.push_back(1e-15 * std::abs(t.Q.back()) + 1e-15);
    t.flagged.push_back(0);
    for (std::int64_t n = 0; n < N; ++n) {
        const auto r = oracle.log_lambda_at(t.Q.back());
        t.Q.push_back(t.Q.back() + r.log_lambda);
        t.error.push_back(t.error.back() + r.relative_error * std::abs(r.log_lambda));
        t.flagged.push_back(t.flagged.back() || !r.ok);
    }
    return t;
}

TailTable tail_table(const OffspringModel& model, std::int64_t N) { return tail_table(GeneratingOracle(model), N); }

std::vector<double> height_tail_table(const GeneratingOracle& oracle, std::int64_t N)
{
    if (N < 0) throw ParameterError("height_tail: n must be >= 0");
    std::vector<double> h{1.0};
    // P(|tau| >= n) = 1 - phi_n(0) and h_{n+1} = h_n - psi(h_n)
    for (std::int64_t n = 0; n < N; ++n) h.push_back(h.back() - oracle.psi(h.back()));
    return h;
}

double height_tail(const GeneratingOracle& oracle, std::int64_t n) { return height_tail_table(oracle, n).back(); }

double tree_probability(const OffspringModel& model, const Tree& t)
{
    double p = 1.0;
    for (Tree::Index u = 0; u < t.size(); ++u) p *= model.pmf(static_cast<std::int64_t>(t.degree(u)));
    return p;
}

std::map<int, double> conditional_strahler_law(const OffspringModel& model, int n)
{
    if (n < 1 || n > TreeEnumerator::max_size) throw ParameterError("conditional_strahler_law: n must lie in [1,12]");
    std::map<int, double> law;
    double total = 0;
    for (const auto& t : TreeEnumerator(n)) {
        const double p = tree_probability(model, t);
        if (p == 0) continue;
        law[strahler(t)] += p;
        total += p;
    }
    if (!(total > 0)) throw ConditioningError("conditional_strahler_law: P(#tau = " + std::to_string(n) + ") = 0");
    for (auto& [s, p] : law) p /= total;
    return law;
}

double expected_size_at_s0(const OffspringModel& model)
{
    const double one_minus_mu1 = 1.0 - model.pmf(1);
    return model.pmf(0) / (one_minus_mu1 * one_minus_mu1);
}

double z_conditional_law(const GeneratingOracle& oracle, const TailTable& table, int n, int m)
{
    if (n < 0 || m < 0) throw ParameterError("z_conditional_law: n and m must be >= 0");
    if (m == 0) return 1.0;
    // 1 - psi'(q_{n-1}), with q_{-1} = 1
    const double t = n == 0 ? 0.0 : table.Q.at(static_cast<std::size_t>(n - 1));
    const double lp = oracle.log_psi_prime_at(t);
    if (lp >= 0) return 0.0;
    return std::exp(m * std::log1p(-std::exp(lp)));
}

double z_conditional_law(const GeneratingOracle& oracle, int n, int m)
{
    return z_conditional_law(oracle, tail_table(oracle, std::max(n, 1)), n, m);
}

double max_degree_below(const OffspringModel& model, std::int64_t n)
{
    if (n < 1) throw ParameterError("max_degree_below: n must be >= 1");
    if (n == 1) return model.pmf(0);
    // no mass at or above n: the fixed point is the double root x = 1 of a critical law
    if (model.tail_mass(n) <= 0) return 1.0;
    std::vector<long double> mu(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) mu[static_cast<std::size_t>(k)] = model.pmf(k);
    auto eval = [&](long double x, long double& deriv) {
        long double g = 0, dg = 0;
        for (std::size_t k = mu.size(); k-- > 0;) {
            dg = dg * x + g;
            g = g * x + mu[k];
        }
        deriv = dg;
        return g;
    };
    // Newton from x = 1: one step lands left of the root, then increases monotonically to it
    long double x = 1;
    for (int it = 0; it < 200; ++it) {
        long double dg = 0;
        const long double f = eval(x, dg) - x;
        const long double step = f / (dg - 1);
        x -= step;
        if (std::abs(step) < 1e-18L) return static_cast<double>(x);
    }
    throw NumericError("max_degree_below: Newton iteration did not converge", 0.0);
}

} // namespace hsgw
