#include "wave/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wave {

std::vector<double> cumulative_Y(const LagrangianState& state) {
    const size_t n = state.q.size();
    std::vector<double> integrand(n);
    for (size_t i = 0; i < n; ++i) {
        const double c = std::cos(0.5 * state.v[i]);
        integrand[i] = state.q[i] * c * c;
    }
    std::vector<double> Y = cumtrapz_corrected(integrand, state.xi_grid.dxi);
    // The integrand is >= 0; only the correction term can produce a tiny
    // negative increment near a breaking node. Pin monotonicity.
    for (size_t i = 1; i < n; ++i) Y[i] = std::max(Y[i], Y[i - 1]);
    return Y;
}

std::vector<double> source_density(const LagrangianState& state, double t,
                                   const FluxModel& model) {
    const size_t n = state.k.size();
    const double el = std::exp(model.lambda * t);
    const double eml = 1.0 / el;
    std::vector<double> w(n);
    for (size_t i = 0; i < n; ++i) {
        const double u = eml * state.k[i];
        const double G = el * eval(model, Deriv::g, u);
        const double F = eml * eval(model, Deriv::fpp, u);
        const double c = std::cos(0.5 * state.v[i]);
        const double s = std::sin(0.5 * state.v[i]);
        w[i] = (G * c * c + 0.5 * F * s * s) * state.q[i];
    }
    return w;
}

namespace {

// Shared setup for the scan and the brute-force reference: trapezoid
// weights, the exact nodal derivative Y' = q cos^2(v/2), and the centered
// estimate of w'. The kink corrections below must be bit-identical between
// the two paths.
struct KernelInputs {
    std::vector<double> Y, w, cw;  // cw = trapezoid weight * w
    std::vector<double> Yp, wp;
    double h;
};

KernelInputs kernel_inputs(const LagrangianState& state, double t, const FluxModel& model) {
    KernelInputs in;
    in.h = state.xi_grid.dxi;
    in.Y = cumulative_Y(state);
    in.w = source_density(state, t, model);
    const size_t n = in.w.size();
    for (size_t i = 0; i < n; ++i)
        if (!std::isfinite(in.Y[i]) || !std::isfinite(in.w[i]))
            throw std::runtime_error("nonlocal evaluation failed");
    in.cw.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const double c = (i == 0 || i == n - 1) ? 0.5 * in.h : in.h;
        in.cw[i] = c * in.w[i];
    }
    in.Yp.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const double c = std::cos(0.5 * state.v[i]);
        in.Yp[i] = state.q[i] * c * c;
    }
    in.wp = centered_diff(in.w, in.h);
    return in;
}

NonlocalTerms assemble(const KernelInputs& in, const std::vector<double>& L,
                       const std::vector<double>& R) {
    const size_t n = in.w.size();
    const double c2 = in.h * in.h / 12.0;
    NonlocalTerms out;
    out.p_tilde.resize(n);
    out.p_tilde_x.resize(n);
    for (size_t i = 0; i < n; ++i) {
        out.p_tilde[i] = 0.5 * (L[i] + R[i] - in.cw[i]) - c2 * in.Yp[i] * in.w[i];
        out.p_tilde_x[i] = 0.5 * (R[i] - L[i]) + c2 * in.wp[i];
    }
    return out;
}

}  // namespace

NonlocalTerms nonlocal_terms(const LagrangianState& state, double t,
                             const FluxModel& model) {
    const KernelInputs in = kernel_inputs(state, t, model);
    const size_t n = in.w.size();
    // L_i: decayed sum over j <= i; R_i: over j >= i. Per-interval factors
    // e^{-dY} keep every intermediate bounded regardless of domain width.
    std::vector<double> L(n), R(n);
    L[0] = in.cw[0];
    for (size_t i = 1; i < n; ++i)
        L[i] = std::exp(-(in.Y[i] - in.Y[i - 1])) * L[i - 1] + in.cw[i];
    R[n - 1] = in.cw[n - 1];
    for (size_t i = n - 1; i-- > 0;)
        R[i] = std::exp(-(in.Y[i + 1] - in.Y[i])) * R[i + 1] + in.cw[i];
    return assemble(in, L, R);
}

NonlocalTerms nonlocal_terms_brute(const LagrangianState& state, double t,
                                   const FluxModel& model) {
    const KernelInputs in = kernel_inputs(state, t, model);
    const size_t n = in.w.size();
    std::vector<double> L(n, 0.0), R(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j <= i; ++j) L[i] += std::exp(-(in.Y[i] - in.Y[j])) * in.cw[j];
        for (size_t j = i; j < n; ++j) R[i] += std::exp(-(in.Y[j] - in.Y[i])) * in.cw[j];
    }
    return assemble(in, L, R);
}

SemilinearRhs rhs(const LagrangianState& state, double t, const FluxModel& model) {
    const NonlocalTerms nl = nonlocal_terms(state, t, model);
    const size_t n = state.k.size();
    const double el = std::exp(model.lambda * t);
    const double eml = 1.0 / el;
    SemilinearRhs d;
    d.dk.resize(n);
    d.dv.resize(n);
    d.dq.resize(n);
    d.dy.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const double u = eml * state.k[i];
        const double G = el * eval(model, Deriv::g, u);
        const double F = eml * eval(model, Deriv::fpp, u);
        const double ch = std::cos(0.5 * state.v[i]);
        const double sh = std::sin(0.5 * state.v[i]);
        const double c2 = ch * ch, s2 = sh * sh;
        d.dk[i] = -nl.p_tilde_x[i];
        d.dv[i] = 2.0 * (G - nl.p_tilde[i]) * c2 - F * s2;
        d.dq[i] = 0.5 * std::sin(state.v[i]) * state.q[i] * (F + 2.0 * G - 2.0 * nl.p_tilde[i]);
        d.dy[i] = eval(model, Deriv::fp, u);
    }
    return d;
}

namespace {
LagrangianState state_add(const LagrangianState& s, const SemilinearRhs& d, double a) {
    LagrangianState out = s;
    const size_t n = s.k.size();
    for (size_t i = 0; i < n; ++i) {
        out.k[i] += a * d.dk[i];
        out.v[i] += a * d.dv[i];
        out.q[i] += a * d.dq[i];
        out.y[i] += a * d.dy[i];
    }
    return out;
}
}  // namespace

LagrangianState step(const LagrangianState& state, const FluxModel& model,
                     const StepControls& controls) {
    const double dt = controls.dt;
    if (!(dt != 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("step: dt must be nonzero and finite");
    const double t = state.t;
    const SemilinearRhs k1 = rhs(state, t, model);
    const SemilinearRhs k2 = rhs(state_add(state, k1, 0.5 * dt), t + 0.5 * dt, model);
    const SemilinearRhs k3 = rhs(state_add(state, k2, 0.5 * dt), t + 0.5 * dt, model);
    const SemilinearRhs k4 = rhs(state_add(state, k3, dt), t + dt, model);

    LagrangianState out = state;
    out.t = t + dt;
    const size_t n = state.k.size();
    const double w = dt / 6.0;
    for (size_t i = 0; i < n; ++i) {
        out.k[i] += w * (k1.dk[i] + 2 * k2.dk[i] + 2 * k3.dk[i] + k4.dk[i]);
        out.v[i] += w * (k1.dv[i] + 2 * k2.dv[i] + 2 * k3.dv[i] + k4.dv[i]);
        out.q[i] += w * (k1.dq[i] + 2 * k2.dq[i] + 2 * k3.dq[i] + k4.dq[i]);
        out.y[i] += w * (k1.dy[i] + 2 * k2.dy[i] + 2 * k3.dy[i] + k4.dy[i]);
    }
    for (size_t i = 0; i < n; ++i) {
        if (!std::isfinite(out.k[i]) || !std::isfinite(out.v[i]) ||
            !std::isfinite(out.q[i]) || !std::isfinite(out.y[i]))
            throw std::runtime_error("step: non-finite value at node " + std::to_string(i));
        if (dt > 0.0 && !(out.q[i] > 0.0))
            throw std::runtime_error("q nonpositive at node " + std::to_string(i));
    }
    return out;
}

double lagrangian_energy(const LagrangianState& state) {
    const size_t n = state.k.size();
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double c = std::cos(0.5 * state.v[i]);
        const double s = std::sin(0.5 * state.v[i]);
        const double e = (state.k[i] * state.k[i] * c * c + s * s) * state.q[i];
        const double wgt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += wgt * e;
    }
    return acc * state.xi_grid.dxi;
}

namespace {
// Residuals of the two structural identities, centered differences on the
// interior (boundary nodes sit in decayed data and are skipped).
void identity_residuals(const LagrangianState& s, double& kxi_res, double& yxi_res) {
    const size_t n = s.k.size();
    const double h = s.xi_grid.dxi;
    double rk = 0.0, ry = 0.0;
    for (size_t i = 1; i + 1 < n; ++i) {
        const double kxi = (s.k[i + 1] - s.k[i - 1]) / (2.0 * h);
        const double yxi = (s.y[i + 1] - s.y[i - 1]) / (2.0 * h);
        const double c = std::cos(0.5 * s.v[i]);
        rk = std::max(rk, std::fabs(kxi - 0.5 * s.q[i] * std::sin(s.v[i])));
        ry = std::max(ry, std::fabs(yxi - s.q[i] * c * c));
    }
    kxi_res = std::max(kxi_res, rk);
    yxi_res = std::max(yxi_res, ry);
}

double nonlocal_sup(const LagrangianState& s, double t, const FluxModel& m) {
    const NonlocalTerms nl = nonlocal_terms(s, t, m);
    double sup = 0.0;
    for (size_t i = 0; i < nl.p_tilde.size(); ++i)
        sup = std::max({sup, std::fabs(nl.p_tilde[i]), std::fabs(nl.p_tilde_x[i])});
    return sup;
}
}  // namespace

LagrangianRun evolve(const LagrangianState& state0, const FluxModel& model,
                     double T, const StepControls& controls, int sample_every) {
    if (!(T > 0.0)) throw std::invalid_argument("evolve: T must be positive");
    if (sample_every < 1) throw std::invalid_argument("evolve: sample_every must be >= 1");
    const long long nsteps = std::max(1LL, (long long)std::llround(T / controls.dt));

    LagrangianRun run;
    run.stop_reason = "completed";
    const double E0 = lagrangian_energy(state0);
    const double e0_floor = std::max(E0, 1e-300);
    // Bound scale for the nonlocal terms, calibrated at t = 0.
    const double nl_scale = std::sqrt(std::max(E0, 0.0)) + E0;
    const double nl0 = nonlocal_sup(state0, state0.t, model);

    InvariantReport& rep = run.report;
    rep.min_q = *std::min_element(state0.q.begin(), state0.q.end());

    LagrangianState s = state0;
    auto observe = [&](const LagrangianState& st, bool snapshot) {
        run.energy_times.push_back(st.t);
        const double E = lagrangian_energy(st);
        run.energies.push_back(E);
        if (E0 > 0.0) rep.energy_drift_rel = std::max(rep.energy_drift_rel, std::fabs(E - E0) / e0_floor);
        rep.min_q = std::min(rep.min_q, *std::min_element(st.q.begin(), st.q.end()));
        for (double kv : st.k) rep.max_abs_k = std::max(rep.max_abs_k, std::fabs(kv));
        for (double vv : st.v) rep.max_abs_v = std::max(rep.max_abs_v, std::fabs(vv));
        if (nl0 > 0.0 && nl_scale > 0.0) {
            // sup relative to its t=0 calibration, in units of sqrt(E0)+E0.
            const double ratio = nonlocal_sup(st, st.t, model) / nl0;
            rep.max_nonlocal_ratio = std::max(rep.max_nonlocal_ratio, ratio);
        }
        if (snapshot) {
            identity_residuals(st, rep.max_kxi_residual, rep.max_yxi_residual);
            run.snapshot_times.push_back(st.t);
            run.snapshots.push_back(st);
        }
    };

    observe(s, true);
    try {
        for (long long it = 1; it <= nsteps; ++it) {
            s = step(s, model, controls);
            const bool at_sample = (it % sample_every == 0) || it == nsteps;
            const bool at_check = (it % controls.energy_check_every == 0) || it == nsteps;
            if (at_check || at_sample) observe(s, at_sample);
        }
    } catch (const std::exception& ex) {
        run.stop_reason = "numerical_failure";
        run.error = ex.what();
    }
    return run;
}

}  // namespace wave
