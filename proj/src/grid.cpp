#include "wave/grid.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace wave {

static bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

UniformGrid::UniformGrid(double x_min_, double dx_, size_t n_)
    : x_min(x_min_), dx(dx_), n(n_) {
    if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x_min))
        throw std::invalid_argument("UniformGrid: dx must be positive and finite");
    if (n < 16 || !is_pow2(n))
        throw std::invalid_argument("UniformGrid: n must be a power of two >= 16");
}

std::vector<double> UniformGrid::nodes() const {
    std::vector<double> xs(n);
    for (size_t i = 0; i < n; ++i) xs[i] = node(i);
    return xs;
}

double mode_frequency(const UniformGrid& g, size_t m) {
    const long long half = (long long)g.n / 2;
    long long ms = (long long)m;
    if (ms > half) ms -= (long long)g.n;
    return 2.0 * std::numbers::pi * double(ms) / g.length();
}

SampledProfile::SampledProfile(UniformGrid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.n)
        throw std::invalid_argument("SampledProfile: values length != grid.n");
    for (double x : values)
        if (!std::isfinite(x))
            throw std::invalid_argument("SampledProfile: non-finite value");
}

bool SampledProfile::boundary_decay_ok(double threshold) const {
    const size_t edge = std::max<size_t>(1, grid.n / 20);
    for (size_t i = 0; i < edge; ++i) {
        if (std::fabs(values[i]) > threshold) return false;
        if (std::fabs(values[grid.n - 1 - i]) > threshold) return false;
    }
    return true;
}

// Shared skeleton: transform, multiply each mode, transform back.
template <typename Mult>
static SampledProfile apply_multiplier(const SampledProfile& p, Mult mult) {
    cvec spec = fft_real(p.values);
    for (size_t m = 0; m < p.grid.n; ++m) spec[m] *= mult(m);
    return SampledProfile(p.grid, ifft_real(std::move(spec)));
}

SampledProfile spectral_derivative(const SampledProfile& p, int order) {
    if (order < 1) throw std::invalid_argument("spectral_derivative: order must be >= 1");
    const bool odd = (order % 2) != 0;
    const size_t nyquist = p.grid.n / 2;
    return apply_multiplier(p, [&](size_t m) -> std::complex<double> {
        if (odd && m == nyquist) return 0.0;
        const std::complex<double> iw(0.0, mode_frequency(p.grid, m));
        std::complex<double> f(1.0, 0.0);
        for (int k = 0; k < order; ++k) f *= iw;
        return f;
    });
}

double sobolev_norm(const SampledProfile& p, double s) {
    if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
    // With u_hat = dx/sqrt(2pi) * DFT, the weighted Parseval sum collapses to
    // (dx/n) sum (1+w^2)^s |DFT|^2; at s=0 that is the trapezoid L2 norm.
    const cvec spec = fft_real(p.values);
    double acc = 0.0;
    for (size_t m = 0; m < p.grid.n; ++m) {
        const double w = mode_frequency(p.grid, m);
        acc += std::pow(1.0 + w * w, s) * std::norm(spec[m]);
    }
    return std::sqrt(acc * p.grid.dx / double(p.grid.n));
}

SampledProfile helmholtz_convolve(const SampledProfile& w) {
    return apply_multiplier(w, [&](size_t m) -> std::complex<double> {
        const double om = mode_frequency(w.grid, m);
        return 1.0 / (1.0 + om * om);
    });
}

SampledProfile helmholtz_convolve_dx(const SampledProfile& w) {
    const size_t nyquist = w.grid.n / 2;
    return apply_multiplier(w, [&](size_t m) -> std::complex<double> {
        if (m == nyquist) return 0.0;
        const double om = mode_frequency(w.grid, m);
        return std::complex<double>(0.0, om) / (1.0 + om * om);
    });
}

SampledProfile resample(const SampledProfile& p, const UniformGrid& target) {
    const UniformGrid& src = p.grid;
    const double hi = src.x_min + src.length();
    // Interval arithmetic on node positions; the right edge equals the
    // periodic wrap node and is allowed.
    const double eps = 1e-9 * src.dx;
    const double t_last = target.node(target.n - 1);
    if (target.x_min < src.x_min - eps || t_last > hi + eps)
        throw std::invalid_argument("resample: target extends outside source domain");
    if (target == src) return p;  // bitwise round trip

    const SampledProfile slope = spectral_derivative(p, 1);
    std::vector<double> out(target.n);
    for (size_t j = 0; j < target.n; ++j) {
        const double x = target.node(j);
        double rel = (x - src.x_min) / src.dx;
        long long i = (long long)std::floor(rel);
        if (i < 0) i = 0;
        if (i >= (long long)src.n) i = (long long)src.n - 1;
        const double t = rel - double(i);
        const size_t i0 = (size_t)i;
        const size_t i1 = (i0 + 1) % src.n;  // right edge wraps periodically
        if (t == 0.0) {
            out[j] = p.values[i0];  // exact at shared nodes
            continue;
        }
        const double h = src.dx;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        out[j] = h00 * p.values[i0] + h * h10 * slope.values[i0] +
                 h01 * p.values[i1] + h * h11 * slope.values[i1];
    }
    return SampledProfile(target, std::move(out));
}

SampledProfile dealias23(const SampledProfile& p) {
    const long long cut = (long long)p.grid.n / 3;
    cvec spec = fft_real(p.values);
    for (size_t m = 0; m < p.grid.n; ++m) {
        long long ms = (long long)m;
        if (ms > (long long)p.grid.n / 2) ms -= (long long)p.grid.n;
        if (std::llabs(ms) > cut) spec[m] = 0.0;
    }
    return SampledProfile(p.grid, ifft_real(std::move(spec)));
}

double spectral_tail_fraction(const SampledProfile& p) {
    const long long cut = (long long)p.grid.n / 3;
    const cvec spec = fft_real(p.values);
    double tail = 0.0, total = 0.0;
    for (size_t m = 0; m < p.grid.n; ++m) {
        long long ms = (long long)m;
        if (ms > (long long)p.grid.n / 2) ms -= (long long)p.grid.n;
        const double e = std::norm(spec[m]);
        total += e;
        if (std::llabs(ms) > cut) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

std::string profile_csv(const SampledProfile& p) {
    std::string out = "x,value\n";
    char buf[80];
    for (size_t i = 0; i < p.grid.n; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.grid.node(i), p.values[i]);
        out += buf;
    }
    return out;
}

}  // namespace wave
