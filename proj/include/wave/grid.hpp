// Uniform periodic grids and sampled profiles: spectral differentiation,
// discrete Sobolev norms, and convolution with the Green function of
// 1 - d^2/dx^2 (the exponential kernel e^{-|x|}/2). Shared substrate for
// both solvers.
#pragma once

#include <string>
#include <vector>

#include "wave/fft.hpp"

namespace wave {

struct UniformGrid {
    double x_min = 0.0;
    double dx = 1.0;
    size_t n = 16;  // power of two, >= 16

    UniformGrid() = default;
    UniformGrid(double x_min_, double dx_, size_t n_);

    double length() const { return dx * double(n); }
    double node(size_t i) const { return x_min + dx * double(i); }
    std::vector<double> nodes() const;
    bool operator==(const UniformGrid& o) const {
        return x_min == o.x_min && dx == o.dx && n == o.n;
    }
};

// Angular frequency of spectral mode m on this grid: 2*pi*m'/L with the
// signed mode index m' in (-n/2, n/2]. Index n/2 is the Nyquist mode.
double mode_frequency(const UniformGrid& g, size_t m);

struct SampledProfile {
    UniformGrid grid;
    std::vector<double> values;

    SampledProfile() = default;
    // Validates length and finiteness.
    SampledProfile(UniformGrid g, std::vector<double> v);

    // True when |values| stays below `threshold` on the outer 5% of the
    // domain at each end. A failed check is a warning condition for H^1
    // line data, never an error; callers decide whether to report it.
    bool boundary_decay_ok(double threshold) const;
};

// Fourier-multiplier derivative (i*omega)^order. The Nyquist mode is zeroed
// for odd orders (its derivative is not representable with a real signal).
SampledProfile spectral_derivative(const SampledProfile& p, int order);

// Discrete H^s norm: (sum_m (1+omega_m^2)^s |u_hat m|^2 * 2pi/L)^{1/2} with
// u_hat normalized so that s=0 reproduces the trapezoid L^2 norm exactly on
// band-limited data.
double sobolev_norm(const SampledProfile& p, double s);

// Convolution with p(x) = e^{-|x|}/2, i.e. (1 - d^2/dx^2)^{-1}, as the
// Fourier multiplier 1/(1+omega^2).
SampledProfile helmholtz_convolve(const SampledProfile& w);

// x-derivative of the above: multiplier i*omega/(1+omega^2).
SampledProfile helmholtz_convolve_dx(const SampledProfile& w);

// Cubic interpolation onto `target`, exact at shared nodes. Throws when the
// target requests points outside the source's periodic extent.
SampledProfile resample(const SampledProfile& p, const UniformGrid& target);

// Zero all modes with |m'| > n/3 (the 2/3 rule). Solvers apply this to
// nonlinear products; the convolution ops above are linear and left alone.
SampledProfile dealias23(const SampledProfile& p);

// Fraction of spectral energy carried by modes with |m'| > n/3. The
// proxy for "smooth enough": resolved runs keep this below 1e-10.
double spectral_tail_fraction(const SampledProfile& p);

// CSV serialization: header "x,value", one row per node, 17 significant
// digits.
std::string profile_csv(const SampledProfile& p);

}  // namespace wave
