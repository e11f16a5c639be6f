// Pseudo-spectral solver of the nonlocal form u_t + f'(u) u_x + lambda u
// + P_x = 0 on a periodic grid. The cross-check for the characteristic
// solver before breaking, the blow-up detector, and the host for the
// strong-solution diagnostics (characteristic tracing included).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wave/flux.hpp"
#include "wave/grid.hpp"

namespace wave {

struct EulerianState {
    double t = 0.0;
    SampledProfile u;
};

// Slope watcher. History is recorded every step; the threshold default is
// -50 (1 + max |ubar_x|), far below any smooth-run slope but reachable in
// finite time when breaking sets in.
struct BlowupMonitor {
    double threshold = -50.0;
    std::vector<double> t_hist;
    std::vector<double> min_ux_hist;
};
BlowupMonitor make_blowup_monitor(const SampledProfile& ubar);

// u_t = -dealias(f'(u) u_x) - lambda u - (d/dx)(1-d^2/dx^2)^{-1}
//        dealias(g(u) + f''(u) u_x^2 / 2).
// Throws on non-finite output.
SampledProfile eulerian_rhs(const EulerianState& state, const FluxModel& model);

// Classical RK4 step.
EulerianState eulerian_step(const EulerianState& state, const FluxModel& model,
                            double dt);

struct EulerianRun {
    std::vector<double> times;
    std::vector<SampledProfile> u;
    std::vector<SampledProfile> ut;  // stored rhs per sample, for time interpolation
    std::vector<double> weighted_E;  // e^{2 lambda t} ||u||_{H^1}^2
    std::vector<double> min_ux;
    std::vector<double> max_abs_u;
    std::string stop_reason;  // completed | blowup_detected | numerical_failure
    std::string error;
    bool under_resolved = false;  // spectral tail ever above 1e-10 of total
    double lambda = 0.0;
};

// Integrates to T (whole steps) or until min_x u_x crosses the monitor
// threshold. Samples every sample_every steps plus the final state.
EulerianRun eulerian_evolve(const EulerianState& state0, const FluxModel& model,
                            double T, double dt, BlowupMonitor& monitor,
                            int sample_every);

// e^{2 lambda t} ||u||_{H^1}^2, the conserved quantity of smooth runs.
double weighted_energy(const EulerianState& state, double lambda);

struct CharacteristicPaths {
    std::vector<double> times;
    std::vector<double> seeds;
    std::vector<std::vector<double>> y;    // [time][seed] positions
    std::vector<std::vector<double>> y_x;  // centered FD across seeds
    std::vector<uint8_t> exited;           // seed left the domain at some time
};

// RK4 on dy/dt = f'(u(t, y)) through the sampled trajectory, cubic Hermite
// interpolation in space (spectral slopes) and time (stored u_t).
CharacteristicPaths characteristics(const EulerianRun& run, const FluxModel& model,
                                    const std::vector<double>& seeds);

}  // namespace wave
