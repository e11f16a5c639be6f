// Change of variables between Eulerian profiles and the characteristic
// coordinate: the energy-equidistributing label map ybar, the initial
// (k, v, q, y) state, and reconstruction of u(t, x) from an evolved state.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wave/grid.hpp"
#include "wave/interp.hpp"

namespace wave {

// Initial data for a run. The sampled profile always exists; the optional
// closed-form evaluators take precedence when present so that kinked
// profiles (peakons) avoid spectral ringing in the initial slopes.
struct InitialData {
    SampledProfile ubar;
    std::function<double(double)> ubar_fn;    // optional exact u(x)
    std::function<double(double)> ubar_x_fn;  // optional exact u_x(x)
    bool lagrangian_only = false;  // kinked data; spectral solver refuses it
};

struct XiGrid {
    double xi_min = 0.0;
    double dxi = 1.0;
    size_t n_xi = 2;
    double node(size_t i) const { return xi_min + dxi * double(i); }
    double extent() const { return dxi * double(n_xi - 1); }
};

struct LagrangianState {
    XiGrid xi_grid;
    double t = 0.0;
    std::vector<double> k;  // e^{lambda t} u along characteristics
    std::vector<double> v;  // 2 arctan of the slope, radians, never wrapped
    std::vector<double> q;  // relabeling density, > 0
    std::vector<double> y;  // characteristic positions, non-decreasing in xi
};

// The label map: F(x) = integral from 0 to x of (1 + ubar_x^2), inverted on
// a uniform xi grid covering [F(x_min), F(x_max)]. Keeps the forward map so
// diagnostics can query ybar at arbitrary labels.
struct YbarMap {
    XiGrid xi_grid;
    std::vector<double> ybar;      // ybar at the xi nodes, strictly increasing
    MonotoneCubicInverse F;        // forward cumulative measure
    double ybar_at(double xi) const { return F(xi); }
};

// Builds the map from sampled (or closed-form) initial data. The cumulative
// integrand is 1 + ubar_x^2 with ubar_x spectral unless the data carries an
// exact evaluator. Throws only on non-finite input (the integrand is >= 1,
// so monotonicity cannot fail otherwise).
YbarMap build_ybar(const InitialData& data, size_t n_xi);

// k(0) = ubar(ybar), v(0) = 2 arctan ubar_x(ybar), q(0) = 1, y(0) = ybar.
LagrangianState initial_state(const InitialData& data, const YbarMap& map);

// Eulerian slopes k_x = sin v / (1 + cos v) where defined; nodes with
// 1 + cos v <= theta (theta = 1e-8) are flagged as breaking and carry a
// zero placeholder value.
struct SlopeField {
    std::vector<double> kx;
    std::vector<uint8_t> valid;
};
SlopeField slope_from_v(const LagrangianState& state);

// Reconstruction: u(t, x) = e^{-lambda t} k(t, xi(x)) where y(t, xi) = x.
// Cubic in y with the exact nodal slopes above, linear next to breaking
// nodes, the common k value across collapsed intervals, and constant
// extension outside [y_first, y_last].
SampledProfile to_eulerian(const LagrangianState& state, double lambda,
                           const UniformGrid& x_grid);

// CSV serialization of a state snapshot: header "xi,k,v,q,y", 17 significant
// digits. The snapshot time lives in the file name, not the rows.
std::string state_csv(const LagrangianState& state);

}  // namespace wave
