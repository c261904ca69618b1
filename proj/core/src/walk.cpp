#include "hsgw/exact.hpp"

#include "hsgw/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <vector>

namespace hsgw {

namespace {

using Poly = std::vector<double>;

constexpr std::int64_t fft_threshold = 1000;
constexpr std::int64_t max_window = 50'000'000;

// the FFTW planner is not thread-safe
std::mutex planner_mutex;

// a * b truncated to `len` coefficients
Poly multiply_direct(const Poly& a, const Poly& b, std::size_t len)
{
    Poly c(std::min(len, a.size() + b.size() - 1), 0.0);
    for (std::size_t i = 0; i < a.size() && i < c.size(); ++i) {
        if (a[i] == 0) continue;
        const std::size_t jmax = std::min(b.size(), c.size() - i);
        for (std::size_t j = 0; j < jmax; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

struct FftwFree
{
    void operator()(void* p) const { fftw_free(p); }
};

Poly multiply_fft(const Poly& a, const Poly& b, std::size_t len)
{
    const std::size_t full = a.size() + b.size() - 1;
    std::size_t size = 1;
    while (size < full) size <<= 1;
    const std::size_t half = size / 2 + 1;
    std::unique_ptr<double, FftwFree> ra(fftw_alloc_real(size)), rb(fftw_alloc_real(size));
    std::unique_ptr<fftw_complex, FftwFree> ca(fftw_alloc_complex(half)), cb(fftw_alloc_complex(half));
    if (!ra || !rb || !ca || !cb) throw ResourceError("walk_point_mass: FFT allocation failed");

    std::fill_n(ra.get(), size, 0.0);
    std::fill_n(rb.get(), size, 0.0);
    std::copy(a.begin(), a.end(), ra.get());
    std::copy(b.begin(), b.end(), rb.get());
    fftw_plan pa, pb, pc;
    {
        std::lock_guard lock(planner_mutex);
        pa = fftw_plan_dft_r2c_1d(static_cast<int>(size), ra.get(), ca.get(), FFTW_ESTIMATE);
        pb = fftw_plan_dft_r2c_1d(static_cast<int>(size), rb.get(), cb.get(), FFTW_ESTIMATE);
        pc = fftw_plan_dft_c2r_1d(static_cast<int>(size), ca.get(), ra.get(), FFTW_ESTIMATE);
    }
    fftw_execute(pa);
    fftw_execute(pb);
    for (std::size_t i = 0; i < half; ++i) {
        const std::complex<double> x(ca.get()[i][0], ca.get()[i][1]), y(cb.get()[i][0], cb.get()[i][1]);
        const auto z = x * y;
        ca.get()[i][0] = z.real();
        ca.get()[i][1] = z.imag();
    }
    fftw_execute(pc);
    {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(pa);
        fftw_destroy_plan(pb);
        fftw_destroy_plan(pc);
    }

    Poly c(std::min(len, full));
    const double scale = 1.0 / static_cast<double>(size);
    // round-off can leave tiny negative values
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::max(0.0, ra.get()[i] * scale);
    return c;
}

} // namespace

WalkPointMass walk_point_mass(const OffspringModel& model, std::int64_t n, std::int64_t p, ConvolutionMode mode)
{
    if (n < 1 || p < 1) throw ParameterError("walk_point_mass: n and p must be >= 1");
    WalkPointMass out;
    if (p > n) {
        out.dropped_mass = 1.0;
        return out;
    }
    // W_n = sum (k_i - 1) = -p  <=>  sum k_i = n - p; partial sums above n - p never come back
    const std::int64_t window = n - p + 1;
    if (window > max_window) throw ResourceError("walk_point_mass: window too large; use a smaller n");
    if (mode == ConvolutionMode::Automatic) mode = n > fft_threshold ? ConvolutionMode::Fft : ConvolutionMode::Direct;
    const auto len = static_cast<std::size_t>(window);

    Poly base(len);
    for (std::size_t k = 0; k < len; ++k) base[k] = model.pmf(static_cast<std::int64_t>(k));
    auto mul = [&](const Poly& a, const Poly& b) {
        return mode == ConvolutionMode::Fft ? multiply_fft(a, b, len) : multiply_direct(a, b, len);
    };

    Poly result{1.0};
    Poly power = base;
    for (std::int64_t e = n; e > 0; e >>= 1) {
        if (e & 1) result = mul(result, power);
        if (e > 1) power = mul(power, power);
    }
    result.resize(len, 0.0);
    out.probability = result[len - 1];
    out.kemperman = static_cast<double>(p) / static_cast<double>(n) * out.probability;
    double kept = 0;
    for (double v : result) kept += v;
    out.dropped_mass = std::max(0.0, 1.0 - kept);
    return out;
}

double size_pmf(const OffspringModel& model, std::int64_t n) { return walk_point_mass(model, n, 1).kemperman; }

} // namespace hsgw
