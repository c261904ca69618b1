#pragma once

#include "hsgw/generating.hpp"
#include "hsgw/offspring.hpp"
#include "hsgw/tree.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace hsgw {

// Q_n = -ln P(S(tau) > n) for n = 0..N, built by Q_{n+1} = Q_n + ln Lambda(e^{-Q_n}).
struct TailTable
{
    std::vector<double> Q;
    std::vector<double> error;      // absolute error estimate of Q_n
    std::vector<char> flagged;      // Lambda precision failed at or before this entry

    std::int64_t max_n() const { return static_cast<std::int64_t>(Q.size()) - 1; }
    // P(S > n); n = -1 gives 1
    double q(std::int64_t n) const;
    double log_q(std::int64_t n) const;
    // P(S = n) = q_{n-1} - q_n, formed without cancellation
    double strahler_pmf(std::int64_t n) const;
};

TailTable tail_table(const GeneratingOracle& oracle, std::int64_t N);
TailTable tail_table(const OffspringModel& model, std::int64_t N);

enum class ConvolutionMode { Automatic, Direct, Fft };

struct WalkPointMass
{
    double probability = 0;    // P(W_n = -p)
    double kemperman = 0;      // (p/n) P(W_n = -p) = P(first hit of -p at step n)
    double dropped_mass = 0;   // P(W_n > -p): discarded by the window, irrelevant to the point mass
};

// FFT mode is used above n = 1000 in Automatic mode
WalkPointMass walk_point_mass(const OffspringModel& model, std::int64_t n, std::int64_t p,
                              ConvolutionMode mode = ConvolutionMode::Automatic);
// P(#tau = n)
double size_pmf(const OffspringModel& model, std::int64_t n);

// P(|tau| >= n) for n = 0..N
std::vector<double> height_tail_table(const GeneratingOracle& oracle, std::int64_t N);
double height_tail(const GeneratingOracle& oracle, std::int64_t n);

// prod_u mu(k_u)
double tree_probability(const OffspringModel& model, const Tree& t);
// law of S(tau) given #tau = n, by enumeration (n <= 12)
std::map<int, double> conditional_strahler_law(const OffspringModel& model, int n);

// E[#tau ; S(tau) = 0]
double expected_size_at_s0(const OffspringModel& model);

// P(Z(tau) >= m | S(tau) = n)
double z_conditional_law(const GeneratingOracle& oracle, const TailTable& table, int n, int m);
double z_conditional_law(const GeneratingOracle& oracle, int n, int m);

// P(Delta(tau) < n): smallest fixed point of x = sum_{k < n} mu(k) x^k
double max_degree_below(const OffspringModel& model, std::int64_t n);

} // namespace hsgw
