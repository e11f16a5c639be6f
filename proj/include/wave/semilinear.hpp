// The characteristic-coordinate evolution: a semilinear ODE system in
// (k, v, q, y) with no spatial derivatives on the right-hand side. The only
// coupling between nodes is the nonlocal exponential-kernel integral, done
// in O(n) by prefix scans. Conserves the time-weighted energy through wave
// breaking, which is the whole point of this formulation.
#pragma once

#include <string>
#include <vector>

#include "wave/flux.hpp"
#include "wave/lagrangian.hpp"

namespace wave {

struct NonlocalTerms {
    std::vector<double> p_tilde;    // smoothed source, kernel e^{-|.|}/2
    std::vector<double> p_tilde_x;  // its Eulerian x-derivative
};

struct StepControls {
    double dt = 1e-3;
    enum class Scheme { rk4 } scheme = Scheme::rk4;
    int energy_check_every = 10;
};

struct InvariantReport {
    double energy_drift_rel = 0.0;   // max |E - E0| / E0 over the run
    double max_kxi_residual = 0.0;   // k_xi - q sin(v)/2, centered FD
    double max_yxi_residual = 0.0;   // y_xi - q cos^2(v/2), centered FD
    double min_q = 0.0;
    double max_abs_k = 0.0;
    double max_abs_v = 0.0;          // recorded, never asserted
    double max_nonlocal_ratio = 0.0; // sup_t ||P~||/(sqrt(E0)+E0) over its t=0 value
};

struct LagrangianRun {
    std::vector<double> snapshot_times;
    std::vector<LagrangianState> snapshots;
    std::vector<double> energy_times;
    std::vector<double> energies;
    InvariantReport report;
    std::string stop_reason;  // completed | numerical_failure
    std::string error;        // failure detail when not completed
};

// Y(xi_i): cumulative integral of q cos^2(v/2) from the left edge,
// Euler-Maclaurin corrected trapezoid, clamped non-decreasing.
std::vector<double> cumulative_Y(const LagrangianState& state);

// Kernel source density w = (G cos^2(v/2) + F sin^2(v/2)/2) q with
// G = e^{lambda t} g(e^{-lambda t} k), F = e^{-lambda t} f''(e^{-lambda t} k).
std::vector<double> source_density(const LagrangianState& state, double t,
                                   const FluxModel& model);

// P~ and P~_x by two exponential prefix scans over the trapezoid node sum,
// with the kink correction that restores O(h^4) at the diagonal:
//   P~_i  = S_i - (h^2/12) Y'_i w_i,   P~x_i = D_i + (h^2/12) w'_i.
// Throws "nonlocal evaluation failed" on non-finite Y or w.
NonlocalTerms nonlocal_terms(const LagrangianState& state, double t,
                             const FluxModel& model);

// O(n^2) reference summation, identical weights and corrections. Exists so
// the scan can be checked to near machine precision against a direct loop.
NonlocalTerms nonlocal_terms_brute(const LagrangianState& state, double t,
                                   const FluxModel& model);

struct SemilinearRhs {
    std::vector<double> dk, dv, dq, dy;
};

// dk = -P~_x
// dv = 2 (G - P~) cos^2(v/2) - F sin^2(v/2)
// dq = q sin(v) (F + 2G - 2 P~) / 2
// dy = f'(e^{-lambda t} k)
SemilinearRhs rhs(const LagrangianState& state, double t, const FluxModel& model);

// One classical RK4 step. Throws "q nonpositive at node i" (an
// under-resolution signal; the continuum q stays positive) and reports the
// first non-finite node on NaN.
LagrangianState step(const LagrangianState& state, const FluxModel& model,
                     const StepControls& controls);

// Trapezoid quadrature of (k^2 cos^2(v/2) + sin^2(v/2)) q, the conserved
// energy of the system.
double lagrangian_energy(const LagrangianState& state);

// Integrates to T (rounded to whole steps), snapshotting every
// sample_every steps. Never stops for breaking; numerical failures are
// caught and reported with partial results intact.
LagrangianRun evolve(const LagrangianState& state0, const FluxModel& model,
                     double T, const StepControls& controls, int sample_every);

}  // namespace wave
