#include "wave/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wave {

double hermite_cell(double f0, double d0, double f1, double d1, double h, double t) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * h * d0 +
           (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * h * d1;
}

double hermite_cell_deriv(double f0, double d0, double f1, double d1, double h, double t) {
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * f0 + (3 * t2 - 4 * t + 1) * h * d0 +
            (-6 * t2 + 6 * t) * f1 + (3 * t2 - 2 * t) * h * d1) / h;
}

double hermite_uniform(double x0, double h, const std::vector<double>& f,
                       const std::vector<double>& d, double x) {
    if (f.size() != d.size() || f.size() < 2)
        throw std::invalid_argument("hermite_uniform: need matching value/slope arrays");
    const double rel = (x - x0) / h;
    long long i = (long long)std::floor(rel);
    if (i < 0) i = 0;
    if (i >= (long long)f.size() - 1) i = (long long)f.size() - 2;
    const double t = rel - double(i);
    return hermite_cell(f[i], d[i], f[i + 1], d[i + 1], h, t);
}

std::vector<double> cumtrapz(const std::vector<double>& g, double h) {
    std::vector<double> out(g.size(), 0.0);
    for (size_t i = 1; i < g.size(); ++i)
        out[i] = out[i - 1] + 0.5 * h * (g[i - 1] + g[i]);
    return out;
}

std::vector<double> centered_diff(const std::vector<double>& g, double h) {
    const size_t n = g.size();
    std::vector<double> d(n, 0.0);
    if (n < 3) return d;
    for (size_t i = 1; i + 1 < n; ++i) d[i] = (g[i + 1] - g[i - 1]) / (2.0 * h);
    d[0] = (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2.0 * h);
    d[n - 1] = (3.0 * g[n - 1] - 4.0 * g[n - 2] + g[n - 3]) / (2.0 * h);
    return d;
}

std::vector<double> cumtrapz_corrected(const std::vector<double>& g, double h) {
    std::vector<double> out = cumtrapz(g, h);
    const std::vector<double> gp = centered_diff(g, h);
    const double c = h * h / 12.0;
    for (size_t i = 1; i < g.size(); ++i) out[i] -= c * (gp[i] - gp[0]);
    return out;
}

MonotoneCubicInverse::MonotoneCubicInverse(double x0, double h, std::vector<double> Fv,
                                           std::vector<double> Fd)
    : x0_(x0), h_(h), Fv_(std::move(Fv)), Fd_(std::move(Fd)) {
    if (Fv_.size() != Fd_.size() || Fv_.size() < 2)
        throw std::invalid_argument("MonotoneCubicInverse: need matching arrays");
    for (size_t i = 1; i < Fv_.size(); ++i)
        if (!(Fv_[i] > Fv_[i - 1]))
            throw std::invalid_argument("MonotoneCubicInverse: values not strictly increasing");
}

double MonotoneCubicInverse::value_at(double x) const {
    return hermite_uniform(x0_, h_, Fv_, Fd_, x);
}

double MonotoneCubicInverse::operator()(double target) const {
    if (target <= Fv_.front()) return x0_;
    if (target >= Fv_.back()) return x_max();
    // Locate the cell, then polish the cubic root.
    const size_t i =
        size_t(std::upper_bound(Fv_.begin(), Fv_.end(), target) - Fv_.begin()) - 1;
    if (Fv_[i] == target) return x0_ + h_ * double(i);
    double lo = 0.0, hi = 1.0;
    double t = (target - Fv_[i]) / (Fv_[i + 1] - Fv_[i]);  // secant start
    for (int it = 0; it < 60; ++it) {
        const double f = hermite_cell(Fv_[i], Fd_[i], Fv_[i + 1], Fd_[i + 1], h_, t) - target;
        if (f > 0.0) hi = t; else lo = t;
        const double df = hermite_cell_deriv(Fv_[i], Fd_[i], Fv_[i + 1], Fd_[i + 1], h_, t) * h_;
        double tn = (df != 0.0) ? t - f / df : 0.5 * (lo + hi);
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);  // bisect when Newton escapes
        if (std::fabs(tn - t) < 1e-16) { t = tn; break; }
        t = tn;
    }
    return x0_ + h_ * (double(i) + t);
}

}  // namespace wave
