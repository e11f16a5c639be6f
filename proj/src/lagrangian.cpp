#include "wave/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wave {

static constexpr double kBreakTheta = 1e-8;  // threshold on 1 + cos v

YbarMap build_ybar(const InitialData& data, size_t n_xi) {
    if (n_xi < 2) throw std::invalid_argument("build_ybar: n_xi must be >= 2");
    const UniformGrid& g = data.ubar.grid;
    const size_t n = g.n;
    const double h = g.dx;

    // Integrand 1 + ubar_x^2 on the closed interval [x_min, x_min + L]; the
    // extra wrap node makes the xi domain cover the whole period.
    std::vector<double> psi(n + 1);
    if (data.ubar_x_fn) {
        for (size_t j = 0; j <= n; ++j) {
            const double s = data.ubar_x_fn(g.x_min + h * double(j));
            psi[j] = 1.0 + s * s;
        }
    } else {
        const SampledProfile ux = spectral_derivative(data.ubar, 1);
        for (size_t j = 0; j < n; ++j) psi[j] = 1.0 + ux.values[j] * ux.values[j];
        psi[n] = psi[0];
    }
    for (double p : psi)
        if (!std::isfinite(p)) throw std::invalid_argument("build_ybar: non-finite integrand");

    // Cumulative measure, Euler-Maclaurin corrected, re-anchored at x = 0 so
    // that ybar(0) = 0 whenever 0 lies in the domain.
    std::vector<double> C = cumtrapz_corrected(psi, h);
    MonotoneCubicInverse Fraw(g.x_min, h, C, psi);
    const double at_zero =
        (g.x_min <= 0.0 && 0.0 <= g.x_min + g.length()) ? Fraw.value_at(0.0) : C.front();
    std::vector<double> Fv(C.size());
    for (size_t j = 0; j < C.size(); ++j) Fv[j] = C[j] - at_zero;

    MonotoneCubicInverse F(g.x_min, h, Fv, psi);

    YbarMap map{XiGrid{}, {}, std::move(F)};
    map.xi_grid.xi_min = Fv.front();
    map.xi_grid.n_xi = n_xi;
    map.xi_grid.dxi = (Fv.back() - Fv.front()) / double(n_xi - 1);

    map.ybar.resize(n_xi);
    for (size_t i = 0; i < n_xi; ++i) map.ybar[i] = map.F(map.xi_grid.node(i));
    map.ybar.front() = g.x_min;
    map.ybar.back() = g.x_min + g.length();
    // The continuum map is 1-Lipschitz; the corrected quadrature can
    // overshoot by O(h^2 * correction), so pin the node-pair property.
    for (size_t i = 1; i < n_xi; ++i) {
        const double lo = map.ybar[i - 1];
        if (!(map.ybar[i] > lo))
            throw std::runtime_error("build_ybar: ybar not strictly increasing");
        map.ybar[i] = std::min(map.ybar[i], lo + map.xi_grid.dxi);
    }
    return map;
}

// Shared evaluator for ubar and ubar_x at arbitrary points: closed form when
// available, cubic Hermite with spectral slopes otherwise.
namespace {
struct ProfileEval {
    const UniformGrid& g;
    std::vector<double> val, slope;
    std::function<double(double)> fn;
    double operator()(double x) const {
        if (fn) return fn(x);
        return hermite_uniform(g.x_min, g.dx, val, slope, x);
    }
};
}  // namespace

LagrangianState initial_state(const InitialData& data, const YbarMap& map) {
    const UniformGrid& g = data.ubar.grid;

    // Closed-interval copies (wrap node appended) for interpolation.
    auto closed = [&](const std::vector<double>& v) {
        std::vector<double> out(v);
        out.push_back(v.front());
        return out;
    };
    const SampledProfile ux = spectral_derivative(data.ubar, 1);
    const SampledProfile uxx = spectral_derivative(data.ubar, 2);

    ProfileEval u_of{g, closed(data.ubar.values), closed(ux.values), data.ubar_fn};
    ProfileEval ux_of{g, closed(ux.values), closed(uxx.values), data.ubar_x_fn};

    LagrangianState s;
    s.xi_grid = map.xi_grid;
    s.t = 0.0;
    const size_t n = map.xi_grid.n_xi;
    s.k.resize(n);
    s.v.resize(n);
    s.q.assign(n, 1.0);
    s.y = map.ybar;
    for (size_t i = 0; i < n; ++i) {
        const double x = map.ybar[i];
        s.k[i] = u_of(x);
        s.v[i] = 2.0 * std::atan(ux_of(x));
    }
    return s;
}

SlopeField slope_from_v(const LagrangianState& state) {
    const size_t n = state.v.size();
    SlopeField f;
    f.kx.assign(n, 0.0);
    f.valid.assign(n, 1);
    for (size_t i = 0; i < n; ++i) {
        const double c = std::cos(state.v[i]);
        if (1.0 + c <= kBreakTheta) {
            f.valid[i] = 0;  // breaking locus: Eulerian slope undefined
        } else {
            f.kx[i] = std::sin(state.v[i]) / (1.0 + c);
        }
    }
    return f;
}

SampledProfile to_eulerian(const LagrangianState& state, double lambda,
                           const UniformGrid& x_grid) {
    const size_t n = state.y.size();
    if (n < 2) throw std::invalid_argument("to_eulerian: state too small");
    const SlopeField sf = slope_from_v(state);
    const double decay = std::exp(-lambda * state.t);
    // Intervals narrower than this carry the common k value; the scale is
    // far below any resolved y spacing but above accumulated roundoff.
    const double gap_tol = 1e-13 * std::max(1.0, std::fabs(state.y.back() - state.y.front()));

    std::vector<double> out(x_grid.n);
    size_t seg = 0;
    for (size_t j = 0; j < x_grid.n; ++j) {
        const double x = x_grid.node(j);
        if (x <= state.y.front()) { out[j] = decay * state.k.front(); continue; }
        if (x >= state.y.back()) { out[j] = decay * state.k.back(); continue; }
        while (seg + 2 < n && state.y[seg + 1] < x) ++seg;
        const double y0 = state.y[seg], y1 = state.y[seg + 1];
        const double gap = y1 - y0;
        if (gap <= gap_tol) {
            // Collapsed interval: k is constant across it in the continuum.
            out[j] = decay * 0.5 * (state.k[seg] + state.k[seg + 1]);
            continue;
        }
        const double t = (x - y0) / gap;
        if (sf.valid[seg] && sf.valid[seg + 1]) {
            out[j] = decay * hermite_cell(state.k[seg], sf.kx[seg], state.k[seg + 1],
                                          sf.kx[seg + 1], gap, t);
        } else {
            // Next to a breaking node the profile is only Hoelder-1/2;
            // a cubic would overshoot.
            out[j] = decay * ((1.0 - t) * state.k[seg] + t * state.k[seg + 1]);
        }
    }
    return SampledProfile(x_grid, std::move(out));
}

std::string state_csv(const LagrangianState& state) {
    std::string out = "xi,k,v,q,y\n";
    char buf[160];
    for (size_t i = 0; i < state.k.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      state.xi_grid.node(i), state.k[i], state.v[i], state.q[i], state.y[i]);
        out += buf;
    }
    return out;
}

}  // namespace wave
