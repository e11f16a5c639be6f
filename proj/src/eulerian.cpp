#include "wave/eulerian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wave/interp.hpp"

namespace wave {

BlowupMonitor make_blowup_monitor(const SampledProfile& ubar) {
    const SampledProfile ux = spectral_derivative(ubar, 1);
    double m = 0.0;
    for (double s : ux.values) m = std::max(m, std::fabs(s));
    BlowupMonitor mon;
    mon.threshold = -50.0 * (1.0 + m);
    return mon;
}

SampledProfile eulerian_rhs(const EulerianState& state, const FluxModel& model) {
    const SampledProfile& u = state.u;
    const size_t n = u.grid.n;
    const SampledProfile ux = spectral_derivative(u, 1);

    std::vector<double> adv(n), src(n);
    for (size_t i = 0; i < n; ++i) {
        const double ui = u.values[i], uxi = ux.values[i];
        adv[i] = eval(model, Deriv::fp, ui) * uxi;
        src[i] = eval(model, Deriv::g, ui) + 0.5 * eval(model, Deriv::fpp, ui) * uxi * uxi;
    }
    const SampledProfile adv_d = dealias23(SampledProfile(u.grid, std::move(adv)));
    const SampledProfile src_d = dealias23(SampledProfile(u.grid, std::move(src)));
    const SampledProfile px = helmholtz_convolve_dx(src_d);

    std::vector<double> out(n);
    for (size_t i = 0; i < n; ++i) {
        out[i] = -adv_d.values[i] - model.lambda * u.values[i] - px.values[i];
        if (!std::isfinite(out[i]))
            throw std::runtime_error("eulerian rhs: non-finite value at node " + std::to_string(i));
    }
    return SampledProfile(u.grid, std::move(out));
}

EulerianState eulerian_step(const EulerianState& state, const FluxModel& model,
                            double dt) {
    if (!(dt != 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("eulerian_step: dt must be nonzero and finite");
    const size_t n = state.u.grid.n;
    auto shifted = [&](const SampledProfile& d, double a) {
        std::vector<double> v(n);
        for (size_t i = 0; i < n; ++i) v[i] = state.u.values[i] + a * d.values[i];
        return EulerianState{state.t + a, SampledProfile(state.u.grid, std::move(v))};
    };
    const SampledProfile k1 = eulerian_rhs(state, model);
    const SampledProfile k2 = eulerian_rhs(shifted(k1, 0.5 * dt), model);
    const SampledProfile k3 = eulerian_rhs(shifted(k2, 0.5 * dt), model);
    const SampledProfile k4 = eulerian_rhs(shifted(k3, dt), model);

    std::vector<double> v(n);
    const double w = dt / 6.0;
    for (size_t i = 0; i < n; ++i)
        v[i] = state.u.values[i] +
               w * (k1.values[i] + 2 * k2.values[i] + 2 * k3.values[i] + k4.values[i]);
    return EulerianState{state.t + dt, SampledProfile(state.u.grid, std::move(v))};
}

double weighted_energy(const EulerianState& state, double lambda) {
    const double n1 = sobolev_norm(state.u, 1.0);
    return std::exp(2.0 * lambda * state.t) * n1 * n1;
}

EulerianRun eulerian_evolve(const EulerianState& state0, const FluxModel& model,
                            double T, double dt, BlowupMonitor& monitor,
                            int sample_every) {
    if (!(T > 0.0)) throw std::invalid_argument("eulerian_evolve: T must be positive");
    if (sample_every < 1)
        throw std::invalid_argument("eulerian_evolve: sample_every must be >= 1");
    const long long nsteps = std::max(1LL, (long long)std::llround(T / dt));

    EulerianRun run;
    run.stop_reason = "completed";
    run.lambda = model.lambda;

    auto min_slope = [&](const EulerianState& s) {
        const SampledProfile ux = spectral_derivative(s.u, 1);
        return *std::min_element(ux.values.begin(), ux.values.end());
    };
    auto sample = [&](const EulerianState& s) {
        run.times.push_back(s.t);
        run.u.push_back(s.u);
        run.ut.push_back(eulerian_rhs(s, model));
        run.weighted_E.push_back(weighted_energy(s, model.lambda));
        run.min_ux.push_back(min_slope(s));
        double m = 0.0;
        for (double x : s.u.values) m = std::max(m, std::fabs(x));
        run.max_abs_u.push_back(m);
        if (spectral_tail_fraction(s.u) > 1e-10) run.under_resolved = true;
    };

    EulerianState s = state0;
    monitor.t_hist.push_back(s.t);
    monitor.min_ux_hist.push_back(min_slope(s));
    sample(s);
    try {
        for (long long it = 1; it <= nsteps; ++it) {
            s = eulerian_step(s, model, dt);
            const double mux = min_slope(s);
            monitor.t_hist.push_back(s.t);
            monitor.min_ux_hist.push_back(mux);
            if (mux < monitor.threshold) {
                sample(s);
                run.stop_reason = "blowup_detected";
                return run;
            }
            if (it % sample_every == 0 || it == nsteps) sample(s);
        }
    } catch (const std::exception& ex) {
        run.stop_reason = "numerical_failure";
        run.error = ex.what();
    }
    return run;
}

namespace {
// Profile with precomputed spectral slope, for Hermite-in-x evaluation on
// the closed periodic interval.
struct XInterp {
    double x0, h;
    std::vector<double> f, d;  // n+1 values (wrap node appended)
    double operator()(double x) const { return hermite_uniform(x0, h, f, d, x); }
};

XInterp make_xinterp(const SampledProfile& p) {
    const SampledProfile dp = spectral_derivative(p, 1);
    XInterp xi;
    xi.x0 = p.grid.x_min;
    xi.h = p.grid.dx;
    xi.f = p.values;
    xi.f.push_back(p.values.front());
    xi.d = dp.values;
    xi.d.push_back(dp.values.front());
    return xi;
}

XInterp blend_time(const XInterp& a, const XInterp& da, const XInterp& b,
                   const XInterp& db, double h, double t) {
    XInterp out;
    out.x0 = a.x0;
    out.h = a.h;
    const size_t n = a.f.size();
    out.f.resize(n);
    out.d.resize(n);
    for (size_t i = 0; i < n; ++i) {
        out.f[i] = hermite_cell(a.f[i], da.f[i], b.f[i], db.f[i], h, t);
        out.d[i] = hermite_cell(a.d[i], da.d[i], b.d[i], db.d[i], h, t);
    }
    return out;
}
}  // namespace

CharacteristicPaths characteristics(const EulerianRun& run, const FluxModel& model,
                                    const std::vector<double>& seeds) {
    if (run.times.size() < 2)
        throw std::invalid_argument("characteristics: need at least two samples");
    const size_t nt = run.times.size();
    const size_t ns = seeds.size();
    const UniformGrid& g = run.u.front().grid;
    const double xlo = g.x_min, xhi = g.x_min + g.length();

    CharacteristicPaths out;
    out.times = run.times;
    out.seeds = seeds;
    out.y.assign(nt, seeds);
    out.exited.assign(ns, 0);

    std::vector<XInterp> ui(nt), uti(nt);
    for (size_t s = 0; s < nt; ++s) {
        ui[s] = make_xinterp(run.u[s]);
        uti[s] = make_xinterp(run.ut[s]);
    }

    auto speed = [&](const XInterp& field, double x) {
        return eval(model, Deriv::fp, field(std::clamp(x, xlo, xhi)));
    };

    std::vector<double> y = seeds;
    for (size_t s = 0; s + 1 < nt; ++s) {
        const double h = run.times[s + 1] - run.times[s];
        const XInterp mid = blend_time(ui[s], uti[s], ui[s + 1], uti[s + 1], h, 0.5);
        for (size_t j = 0; j < ns; ++j) {
            const double k1 = speed(ui[s], y[j]);
            const double k2 = speed(mid, y[j] + 0.5 * h * k1);
            const double k3 = speed(mid, y[j] + 0.5 * h * k2);
            const double k4 = speed(ui[s + 1], y[j] + h * k3);
            y[j] += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
            if (y[j] < xlo || y[j] > xhi) out.exited[j] = 1;
        }
        out.y[s + 1] = y;
    }

    out.y_x.assign(nt, std::vector<double>(ns, 1.0));
    for (size_t s = 0; s < nt; ++s) {
        const std::vector<double>& row = out.y[s];
        for (size_t j = 0; j < ns; ++j) {
            const size_t ja = (j == 0) ? 0 : j - 1;
            const size_t jb = (j + 1 == ns) ? ns - 1 : j + 1;
            const double den = seeds[jb] - seeds[ja];
            out.y_x[s][j] = (den != 0.0) ? (row[jb] - row[ja]) / den : 1.0;
        }
    }
    return out;
}

}  // namespace wave
