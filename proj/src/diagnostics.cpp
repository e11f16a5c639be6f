#include "wave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wave {

SampledProfile momentum(const SampledProfile& u) {
    cvec spec = fft_real(u.values);
    for (size_t m = 0; m < u.grid.n; ++m) {
        const double w = mode_frequency(u.grid, m);
        spec[m] *= 1.0 + w * w;
    }
    return SampledProfile(u.grid, ifft_real(std::move(spec)));
}

SampledProfile make_sign_changing_data(double bump_amplitude, double separation,
                                       const UniformGrid& x_grid) {
    if (bump_amplitude < 0.0)
        throw std::invalid_argument("make_sign_changing_data: amplitude must be >= 0");
    if (!(separation > 0.0))
        throw std::invalid_argument("make_sign_changing_data: separation must be > 0");
    if (separation < 2.0)
        throw std::invalid_argument("make_sign_changing_data: bumps overlap");
    // Smooth compact bump of unit radius, peak value = amplitude.
    auto phi = [&](double x) {
        const double r2 = x * x;
        return r2 < 1.0 ? bump_amplitude * std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
    };
    const double a = 0.5 * separation;
    std::vector<double> m(x_grid.n);
    for (size_t i = 0; i < x_grid.n; ++i) {
        const double x = x_grid.node(i);
        m[i] = -phi(x + a) + phi(x - a);
    }
    return helmholtz_convolve(SampledProfile(x_grid, std::move(m)));
}

namespace {
// Interpolators over a profile and its spectral slope (closed interval).
struct Interp {
    double x0, h;
    std::vector<double> f, d;
    double operator()(double x) const { return hermite_uniform(x0, h, f, d, x); }
};
Interp interp_of(const SampledProfile& p) {
    const SampledProfile dp = spectral_derivative(p, 1);
    Interp it{p.grid.x_min, p.grid.dx, p.values, dp.values};
    it.f.push_back(p.values.front());
    it.d.push_back(dp.values.front());
    return it;
}

void require_transport_conditions(const EulerianRun& run, const FluxModel& model) {
    const double U = 2.0 * sobolev_norm(run.u.front(), 1.0);
    const ConditionReport cr = check_theorem_conditions(model, std::max(U, 1.0));
    if (!cr.f_triple_prime_zero || !cr.g_prime_matches ||
        !(cr.f_double_prime_lower_bound > 0.0))
        throw std::runtime_error("invariant not applicable");
}

// First-derivative weights at x0 over arbitrary nodes (Fornberg's recursion,
// specialized to derivative order one). Exact for polynomials of degree
// < x.size(), so five nodes give a fourth-order stencil.
std::vector<double> fd1_weights(const std::vector<double>& x, double x0) {
    const size_t n = x.size();
    std::vector<double> w0(n, 0.0), w1(n, 0.0);
    w0[0] = 1.0;
    double prod_prev = 1.0;
    double dx_new = x[0] - x0;
    for (size_t i = 1; i < n; ++i) {
        double prod = 1.0;
        const double dx_old = dx_new;
        dx_new = x[i] - x0;
        for (size_t j = 0; j < i; ++j) {
            const double sep = x[i] - x[j];
            prod *= sep;
            if (j == i - 1) {
                w1[i] = prod_prev * (w0[i - 1] - dx_old * w1[i - 1]) / prod;
                w0[i] = -prod_prev * dx_old * w0[i - 1] / prod;
            }
            w1[j] = (dx_new * w1[j] - w0[j]) / sep;
            w0[j] = dx_new * w0[j] / sep;
        }
        prod_prev = prod;
    }
    return w1;
}

// Per-seed stencil: the tightest window of up to five neighbours, so a seed
// set split into distant clusters never differentiates across the gap.
struct LabelStencil {
    size_t lo;
    std::vector<double> w;
    double apply(const std::vector<double>& row) const {
        double s = 0.0;
        for (size_t k = 0; k < w.size(); ++k) s += w[k] * row[lo + k];
        return s;
    }
};

std::vector<LabelStencil> label_stencils(const std::vector<double>& seeds) {
    const size_t ns = seeds.size();
    const size_t width = std::min<size_t>(5, ns);
    std::vector<LabelStencil> out(ns);
    for (size_t j = 0; j < ns; ++j) {
        const size_t lo_min = (j + 1 >= width) ? j + 1 - width : 0;
        const size_t lo_max = std::min(j, ns - width);
        size_t best = lo_min;
        double best_span = seeds[lo_min + width - 1] - seeds[lo_min];
        for (size_t lo = lo_min + 1; lo <= lo_max; ++lo) {
            const double span = seeds[lo + width - 1] - seeds[lo];
            if (span < best_span) { best_span = span; best = lo; }
        }
        const std::vector<double> nodes(seeds.begin() + best,
                                        seeds.begin() + best + width);
        out[j] = {best, fd1_weights(nodes, seeds[j])};
    }
    return out;
}
}  // namespace

MomentumTrack momentum_invariant_check(const EulerianRun& run, const FluxModel& model,
                                       const std::vector<double>& seeds) {
    require_transport_conditions(run, model);
    if (seeds.size() < 3)
        throw std::invalid_argument("momentum_invariant_check: need >= 3 seeds");
    for (size_t j = 1; j < seeds.size(); ++j)
        if (!(seeds[j] > seeds[j - 1]))
            throw std::invalid_argument(
                "momentum_invariant_check: seeds must be strictly increasing");

    const SampledProfile& ubar = run.u.front();
    const InitialData data{ubar, nullptr, nullptr, false};
    const YbarMap map = build_ybar(data, 2048);  // only the forward map is used
    const Interp ubar_x = interp_of(spectral_derivative(ubar, 1));
    const SampledProfile mbar = momentum(ubar);
    const Interp mbar_i = interp_of(mbar);

    const size_t ns = seeds.size();
    std::vector<double> p(ns), base(ns), ybx(ns);
    for (size_t j = 0; j < ns; ++j) {
        p[j] = map.ybar_at(seeds[j]);
        const double s = ubar_x(p[j]);
        ybx[j] = 1.0 / (1.0 + s * s);  // exact t=0 stretch along the label map
        base[j] = mbar_i(p[j]) * ybx[j] * ybx[j];
    }

    const CharacteristicPaths paths = characteristics(run, model, p);
    const size_t nt = run.times.size();

    // FD of position with respect to the x label, anchored multiplicatively
    // so the t=0 stretch is the exact formula, not the FD estimate.
    const std::vector<LabelStencil> st = label_stencils(seeds);

    double base_max = 0.0;
    for (double b : base) base_max = std::max(base_max, std::fabs(b));
    const double floor = 1e-8 * base_max;

    MomentumTrack out;
    out.times = run.times;
    out.seeds = seeds;
    out.base = base;
    out.track.assign(nt, std::vector<double>(ns, 0.0));

    std::vector<double> fd0(ns);
    for (size_t j = 0; j < ns; ++j) fd0[j] = st[j].apply(paths.y[0]);

    for (size_t s = 0; s < nt; ++s) {
        const Interp m_i = interp_of(momentum(run.u[s]));
        const double el = std::exp(run.lambda * run.times[s]);
        for (size_t j = 0; j < ns; ++j) {
            const double yx = ybx[j] * st[j].apply(paths.y[s]) / fd0[j];
            const double tr = m_i(paths.y[s][j]) * yx * yx * el;
            out.track[s][j] = tr;
            if (std::fabs(base[j]) > floor && base_max > 0.0)
                out.max_rel_deviation =
                    std::max(out.max_rel_deviation, std::fabs(tr / base[j] - 1.0));
        }
    }
    return out;
}

std::vector<uint8_t> sign_pattern_check(const EulerianRun& run, const FluxModel& model,
                                        double x0) {
    require_transport_conditions(run, model);
    const InitialData data{run.u.front(), nullptr, nullptr, false};
    const YbarMap map = build_ybar(data, 2048);
    const CharacteristicPaths path = characteristics(run, model, {map.ybar_at(x0)});

    const size_t nt = run.times.size();
    std::vector<uint8_t> ok(nt, 1);
    for (size_t s = 0; s < nt; ++s) {
        const SampledProfile m = momentum(run.u[s]);
        double mmax = 0.0;
        for (double v : m.values) mmax = std::max(mmax, std::fabs(v));
        const double tol = 1e-6 * mmax;
        const double divide = path.y[s][0];
        for (size_t i = 0; i < m.grid.n; ++i) {
            const double x = m.grid.node(i);
            if (x <= divide && m.values[i] > tol) { ok[s] = 0; break; }
            if (x >= divide && m.values[i] < -tol) { ok[s] = 0; break; }
        }
    }
    return ok;
}

UxBoundResult ux_lower_bound_check(const EulerianRun& run) {
    UxBoundResult r;
    r.bound = -sobolev_norm(run.u.front(), 1.0) / std::sqrt(2.0);
    r.min_ux = run.min_ux.empty() ? 0.0 : *std::min_element(run.min_ux.begin(), run.min_ux.end());
    r.pass = r.min_ux >= r.bound - 1e-6;
    return r;
}

DecayResult small_data_decay_check(const EulerianRun& run, const FluxModel& model,
                                   double s) {
    DecayResult r;
    r.times = run.times;
    r.norm_sq.resize(run.times.size());
    for (size_t i = 0; i < run.times.size(); ++i) {
        const double ns = sobolev_norm(run.u[i], s);
        r.norm_sq[i] = ns * ns;
    }
    const double n0 = r.norm_sq.empty() ? 0.0 : r.norm_sq.front();
    r.pass = true;
    for (size_t i = 0; i < r.norm_sq.size(); ++i) {
        const double cap = n0 * std::exp(-model.lambda * r.times[i]) * r.bound_factor;
        if (r.norm_sq[i] > cap + 1e-300) { r.pass = false; break; }
    }
    return r;
}

DependenceCurve continuous_dependence_check(const InitialData& data, const FluxModel& model,
                                            double perturbation_size, double T,
                                            const DependenceOptions& opt) {
    const UniformGrid& g = data.ubar.grid;
    // H^1-normalized Gaussian bump, scaled to the requested size.
    std::vector<double> shape(g.n);
    for (size_t i = 0; i < g.n; ++i) {
        const double x = g.node(i) - opt.bump_center;
        shape[i] = std::exp(-x * x / (2.0 * opt.bump_sigma * opt.bump_sigma));
    }
    SampledProfile delta(g, std::move(shape));
    const double h1 = sobolev_norm(delta, 1.0);
    for (double& v : delta.values) v *= perturbation_size / h1;

    InitialData perturbed;
    std::vector<double> pv(g.n);
    for (size_t i = 0; i < g.n; ++i) pv[i] = data.ubar.values[i] + delta.values[i];
    perturbed.ubar = SampledProfile(g, std::move(pv));
    // Closed forms, when present, only describe the unperturbed profile.
    InitialData base_sampled{data.ubar, nullptr, nullptr, false};

    auto run_one = [&](const InitialData& d) {
        const YbarMap map = build_ybar(d, opt.n_xi);
        const LagrangianState s0 = initial_state(d, map);
        return evolve(s0, model, T, opt.controls, opt.sample_every);
    };
    const LagrangianRun ra = run_one(base_sampled);
    const LagrangianRun rb = run_one(perturbed);
    if (ra.stop_reason != "completed" || rb.stop_reason != "completed")
        throw std::runtime_error("continuous_dependence_check: solver failure");

    DependenceCurve out;
    const size_t nt = std::min(ra.snapshots.size(), rb.snapshots.size());
    for (size_t s = 0; s < nt; ++s) {
        const SampledProfile ua = to_eulerian(ra.snapshots[s], model.lambda, g);
        const SampledProfile ub = to_eulerian(rb.snapshots[s], model.lambda, g);
        double sup = 0.0;
        for (size_t i = 0; i < g.n; ++i) {
            const double x = g.node(i);
            if (x < opt.window_lo || x > opt.window_hi) continue;
            sup = std::max(sup, std::fabs(ua.values[i] - ub.values[i]));
        }
        out.times.push_back(ra.snapshot_times[s]);
        out.sup_dist.push_back(sup);
        out.max_dist = std::max(out.max_dist, sup);
    }
    return out;
}

}  // namespace wave
