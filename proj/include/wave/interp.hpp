// Cubic Hermite interpolation and corrected cumulative quadrature helpers.
// One interpolation kernel serves every consumer (resampling, coordinate
// maps, characteristic tracing); accuracy is set by the slopes the caller
// supplies, not by a slope estimator hidden in here.
#pragma once

#include <cstddef>
#include <vector>

namespace wave {

// Value at parameter t in [0,1] of the cubic with endpoint values f0, f1 and
// endpoint derivatives d0, d1 (with respect to x, interval width h).
double hermite_cell(double f0, double d0, double f1, double d1, double h, double t);

// Derivative (with respect to x) of the same cubic at parameter t.
double hermite_cell_deriv(double f0, double d0, double f1, double d1, double h, double t);

// Piecewise-cubic evaluation on a uniform grid {x0 + i*h} with nodal values
// f and nodal derivatives d. Queries are clamped to the node range.
double hermite_uniform(double x0, double h, const std::vector<double>& f,
                       const std::vector<double>& d, double x);

// Cumulative trapezoid of samples g on a uniform step h: out[0] = 0,
// out[i] = integral estimate from node 0 to node i.
std::vector<double> cumtrapz(const std::vector<double>& g, double h);

// Same with the Euler-Maclaurin endpoint correction -(h^2/12)(g'_i - g'_0),
// g' estimated by centered differences (one-sided at the ends). Restores
// O(h^4) accuracy at interior nodes for smooth integrands.
std::vector<double> cumtrapz_corrected(const std::vector<double>& g, double h);

// Centered-difference derivative estimates on a uniform grid, one-sided
// (second order) at the two ends.
std::vector<double> centered_diff(const std::vector<double>& g, double h);

// Strictly increasing piecewise-cubic F given by nodal values Fv on the
// uniform grid {x0 + i*h} with nodal derivatives Fd (> 0). Solves F(x) =
// target for each target (ascending or not); Newton with bisection fallback.
class MonotoneCubicInverse {
  public:
    MonotoneCubicInverse(double x0, double h, std::vector<double> Fv, std::vector<double> Fd);
    double operator()(double target) const;
    double value_at(double x) const;  // forward evaluation F(x)
    double x_min() const { return x0_; }
    double x_max() const { return x0_ + h_ * double(Fv_.size() - 1); }
    double f_min() const { return Fv_.front(); }
    double f_max() const { return Fv_.back(); }

  private:
    double x0_, h_;
    std::vector<double> Fv_, Fd_;
};

}  // namespace wave
