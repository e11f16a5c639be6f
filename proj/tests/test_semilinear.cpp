#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "wave/flux.hpp"
#include "wave/grid.hpp"
#include "wave/lagrangian.hpp"
#include "wave/semilinear.hpp"

using namespace wave;

namespace {

constexpr double kPi = 3.14159265358979323846;

FluxModel ch_model(double lambda = 0.0) {
    return make_flux({0.0, 0.0, 0.5}, {0.0, 0.0, 1.0}, lambda);
}

UniformGrid line_grid(double half_width, size_t n) {
    return UniformGrid(-half_width, 2.0 * half_width / double(n), n);
}

InitialData gaussian_data(const UniformGrid& g, double a) {
    std::vector<double> v(g.n);
    for (size_t i = 0; i < g.n; ++i) {
        const double x = g.node(i);
        v[i] = a * std::exp(-x * x);
    }
    InitialData d;
    d.ubar = SampledProfile(g, std::move(v));
    return d;
}

LagrangianState uniform_state(size_t n, double dxi, double k, double v, double q) {
    XiGrid xg{0.0, dxi, n};
    std::vector<double> y(n);
    for (size_t i = 0; i < n; ++i) y[i] = xg.node(i);
    return LagrangianState{xg, 0.0, std::vector<double>(n, k), std::vector<double>(n, v),
                           std::vector<double>(n, q), y};
}

// A smooth synthetic state with closed-form fields, for quadrature oracles.
LagrangianState smooth_state(size_t n, double xi_max) {
    XiGrid xg{0.0, xi_max / double(n - 1), n};
    LagrangianState s{xg, 0.0, std::vector<double>(n), std::vector<double>(n),
                      std::vector<double>(n), std::vector<double>(n)};
    for (size_t i = 0; i < n; ++i) {
        const double xi = xg.node(i);
        s.k[i] = 0.4 * std::sin(xi);
        s.v[i] = 0.3 * std::sin(xi);
        s.q[i] = 1.0 + 0.2 * std::cos(xi);
        s.y[i] = xi;
    }
    return s;
}

LagrangianState random_state(size_t n, std::mt19937& gen) {
    std::uniform_real_distribution<double> uk(-1.0, 1.0), uv(-2.0, 2.0), uq(0.5, 1.5);
    XiGrid xg{0.0, 0.02, n};
    LagrangianState s{xg, 0.0, std::vector<double>(n), std::vector<double>(n),
                      std::vector<double>(n), std::vector<double>(n)};
    for (size_t i = 0; i < n; ++i) {
        s.k[i] = uk(gen);
        s.v[i] = uv(gen);
        s.q[i] = uq(gen);
        s.y[i] = xg.node(i);
    }
    return s;
}

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth + 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return simpson_rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 0);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double err = 0.0;
    for (size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
    return err;
}

double state_distance(const LagrangianState& a, const LagrangianState& b) {
    return std::max(std::max(max_abs_diff(a.k, b.k), max_abs_diff(a.v, b.v)),
                    std::max(max_abs_diff(a.q, b.q), max_abs_diff(a.y, b.y)));
}

}  // namespace

TEST_SUITE("semilinear") {

TEST_CASE("cumulative position is the identity for the rest state") {
    const LagrangianState s = uniform_state(128, 0.1, 0.0, 0.0, 1.0);
    const std::vector<double> Y = cumulative_Y(s);
    for (size_t i = 0; i < Y.size(); ++i) {
        CHECK(std::abs(Y[i] - s.xi_grid.node(i)) < 1e-12);
    }
}

TEST_CASE("cumulative position vanishes at the breaking angle") {
    const LagrangianState s = uniform_state(64, 0.1, 0.0, kPi, 1.0);
    for (double Yi : cumulative_Y(s)) CHECK(std::abs(Yi) < 1e-12);
}

TEST_CASE("cumulative position matches adaptive quadrature on smooth fields") {
    const LagrangianState s = smooth_state(2049, 4.0);
    const std::vector<double> Y = cumulative_Y(s);
    auto integrand = [](double xi) {
        const double v = 0.3 * std::sin(xi);
        const double c = std::cos(0.5 * v);
        return c * c * (1.0 + 0.2 * std::cos(xi));
    };
    for (size_t i : {256u, 700u, 1024u, 1600u, 2048u}) {
        const double oracle = adaptive_simpson(integrand, 0.0, s.xi_grid.node(i), 1e-13);
        CHECK(std::abs(Y[i] - oracle) < 1e-9);
    }
}

TEST_CASE("source density vanishes on the zero state") {
    const LagrangianState s = uniform_state(64, 0.1, 0.0, 0.0, 1.0);
    for (double w : source_density(s, 0.0, ch_model())) CHECK(w == 0.0);
}

TEST_CASE("source density at the breaking angle keeps only the slope term") {
    const LagrangianState s = uniform_state(64, 0.1, 0.0, kPi, 1.0);
    for (double w : source_density(s, 0.0, ch_model())) {
        CHECK(w == doctest::Approx(0.5).epsilon(1e-14));
    }
}

TEST_CASE("source density agrees with pointwise re-evaluation") {
    const LagrangianState s = smooth_state(513, 4.0);
    const double t = 0.7;
    const FluxModel m = ch_model(0.3);
    const std::vector<double> w = source_density(s, t, m);
    for (size_t i : {17u, 100u, 255u, 400u, 512u}) {
        const double decay = std::exp(-m.lambda * t), grow = std::exp(m.lambda * t);
        const double G = grow * eval(m, Deriv::g, decay * s.k[i]);
        const double F = decay * eval(m, Deriv::fpp, decay * s.k[i]);
        const double c = std::cos(0.5 * s.v[i]), sn = std::sin(0.5 * s.v[i]);
        const double expect = (G * c * c + 0.5 * F * sn * sn) * s.q[i];
        CHECK(w[i] == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("nonlocal terms vanish with the source") {
    const LagrangianState s = uniform_state(64, 0.1, 0.0, 0.0, 1.0);
    const NonlocalTerms nl = nonlocal_terms(s, 0.0, ch_model());
    for (size_t i = 0; i < 64; ++i) {
        CHECK(nl.p_tilde[i] == 0.0);
        CHECK(nl.p_tilde_x[i] == 0.0);
    }
}

TEST_CASE("kernel quadrature cross-checks the Fourier convolution path") {
    // With v = 0, q = 1 the kernel coordinate Y is the identity, so the
    // scan must reproduce the spectral Helmholtz convolution of the same
    // source on the matching x grid. Domain wide enough that the periodic
    // and line kernels agree far below the tolerance.
    const size_t n = 8192;
    const UniformGrid g = line_grid(40.0, n);
    XiGrid xg{g.x_min, g.dx, n};
    LagrangianState s{xg, 0.0, std::vector<double>(n), std::vector<double>(n, 0.0),
                      std::vector<double>(n, 1.0), std::vector<double>(n)};
    for (size_t i = 0; i < n; ++i) {
        s.k[i] = std::exp(-xg.node(i) * xg.node(i));
        s.y[i] = xg.node(i);
    }
    const FluxModel m = ch_model();
    const NonlocalTerms nl = nonlocal_terms(s, 0.0, m);
    const std::vector<double> w = source_density(s, 0.0, m);
    const SampledProfile conv = helmholtz_convolve(SampledProfile(g, w));
    const SampledProfile conv_dx = helmholtz_convolve_dx(SampledProfile(g, w));
    CHECK(max_abs_diff(nl.p_tilde, conv.values) < 1e-8);
    CHECK(max_abs_diff(nl.p_tilde_x, conv_dx.values) < 1e-8);
}

TEST_CASE("prefix scan equals brute-force summation on random states") {
    std::mt19937 gen(20240817u);
    const FluxModel m = ch_model(0.2);
    for (int trial = 0; trial < 25; ++trial) {
        const LagrangianState s = random_state(512, gen);
        const NonlocalTerms fast = nonlocal_terms(s, 0.3, m);
        const NonlocalTerms slow = nonlocal_terms_brute(s, 0.3, m);
        CHECK(max_abs_diff(fast.p_tilde, slow.p_tilde) < 1e-10);
        CHECK(max_abs_diff(fast.p_tilde_x, slow.p_tilde_x) < 1e-10);
    }
}

TEST_CASE("the zero state is a fixed point of the quadratic model") {
    const LagrangianState s = uniform_state(128, 0.1, 0.0, 0.0, 1.0);
    const SemilinearRhs r = rhs(s, 0.0, ch_model());
    for (size_t i = 0; i < 128; ++i) {
        CHECK(r.dk[i] == 0.0);
        CHECK(r.dv[i] == 0.0);
        CHECK(r.dq[i] == 0.0);
        CHECK(r.dy[i] == 0.0);  // f'(0) = 0
    }
}

TEST_CASE("at the breaking angle the v equation reduces to the slope term") {
    // cos^2(v/2) = 0 kills both nonlocal contributions to dv, leaving
    // dv = -f''(0) = -1 for the quadratic model regardless of P~.
    const LagrangianState s = uniform_state(128, 0.1, 0.0, kPi, 1.0);
    const SemilinearRhs r = rhs(s, 0.0, ch_model());
    for (size_t i = 0; i < 128; ++i) {
        CHECK(r.dv[i] == doctest::Approx(-1.0).epsilon(1e-13));
    }
}

TEST_CASE("rhs matches a centered difference of the integrated flow") {
    const UniformGrid g = line_grid(15.0, 512);
    const InitialData d = gaussian_data(g, 0.6);
    const LagrangianState s0 = initial_state(d, build_ybar(d, 1024));
    const FluxModel m = ch_model(0.4);
    const SemilinearRhs r = rhs(s0, s0.t, m);

    const double delta = 1e-4;
    StepControls fwd, bwd;
    fwd.dt = delta;
    bwd.dt = -delta;
    const LagrangianState plus = step(s0, m, fwd);
    const LagrangianState minus = step(s0, m, bwd);
    double err = 0.0;
    for (size_t i = 0; i < s0.k.size(); ++i) {
        err = std::max(err, std::abs((plus.k[i] - minus.k[i]) / (2.0 * delta) - r.dk[i]));
        err = std::max(err, std::abs((plus.v[i] - minus.v[i]) / (2.0 * delta) - r.dv[i]));
        err = std::max(err, std::abs((plus.q[i] - minus.q[i]) / (2.0 * delta) - r.dq[i]));
        err = std::max(err, std::abs((plus.y[i] - minus.y[i]) / (2.0 * delta) - r.dy[i]));
    }
    CHECK(err < 1e-6);
}

TEST_CASE("step leaves the fixed point unchanged") {
    const LagrangianState s = uniform_state(64, 0.1, 0.0, 0.0, 1.0);
    StepControls c;
    c.dt = 0.01;
    const LagrangianState next = step(s, ch_model(), c);
    CHECK(state_distance(s, next) < 1e-15);
    CHECK(next.t == doctest::Approx(0.01));
}

TEST_CASE("a step followed by its reverse returns to the start") {
    const UniformGrid g = line_grid(15.0, 256);
    const InitialData d = gaussian_data(g, 0.5);
    const LagrangianState s0 = initial_state(d, build_ybar(d, 512));
    const FluxModel m = ch_model();
    StepControls fwd, bwd;
    fwd.dt = 1e-3;
    bwd.dt = -1e-3;
    const LagrangianState back = step(step(s0, m, fwd), m, bwd);
    CHECK(state_distance(s0, back) < 1e-12);
}

TEST_CASE("one-step error shows fourth-order convergence") {
    const UniformGrid g = line_grid(15.0, 256);
    const InitialData d = gaussian_data(g, 0.8);
    const LagrangianState s0 = initial_state(d, build_ybar(d, 512));
    const FluxModel m = ch_model();

    const double dt = 0.05;
    auto advance = [&](const LagrangianState& s, double h, int steps) {
        StepControls c;
        c.dt = h;
        LagrangianState cur = s;
        for (int i = 0; i < steps; ++i) cur = step(cur, m, c);
        return cur;
    };
    const LagrangianState ref = advance(s0, dt / 64.0, 64);
    const double e1 = state_distance(advance(s0, dt, 1), ref);
    const double e2 = state_distance(advance(s0, dt / 2.0, 2), ref);
    CHECK(e1 / e2 > 8.0);
    CHECK(e1 / e2 < 32.0);
}

TEST_CASE("step rejects a zero time increment") {
    const LagrangianState s = uniform_state(64, 0.1, 0.0, 0.0, 1.0);
    StepControls c;
    c.dt = 0.0;
    CHECK_THROWS(step(s, ch_model(), c));
}

TEST_CASE("nonpositive density is reported with its node") {
    LagrangianState s = uniform_state(64, 0.1, 0.1, 0.2, 1.0);
    s.q[13] = -0.1;
    StepControls c;
    c.dt = 1e-3;
    try {
        step(s, ch_model(), c);
        CHECK(false);
    } catch (const std::exception& e) {
        const std::string msg = e.what();
        CHECK(msg.find("q nonpositive") != std::string::npos);
    }
}

TEST_CASE("energy of the zero state is zero") {
    CHECK(lagrangian_energy(uniform_state(64, 0.1, 0.0, 0.0, 1.0)) == 0.0);
}

TEST_CASE("initial energy equals the squared H^1 norm of the data") {
    const UniformGrid g = line_grid(20.0, 1024);
    const InitialData d = gaussian_data(g, 0.5);
    const LagrangianState s0 = initial_state(d, build_ybar(d, 8192));
    const double e0 = lagrangian_energy(s0);
    const double h1 = sobolev_norm(d.ubar, 1.0);
    CHECK(std::abs(e0 - h1 * h1) / (h1 * h1) < 1e-6);
}

TEST_CASE("energy at the breaking angle is the label extent") {
    const LagrangianState s = uniform_state(128, 0.1, 0.0, kPi, 1.0);
    CHECK(lagrangian_energy(s) == doctest::Approx(12.7).epsilon(1e-12));
}

TEST_CASE("zero data evolves as a line of fixed points") {
    const UniformGrid g = line_grid(10.0, 256);
    InitialData d;
    d.ubar = SampledProfile(g, std::vector<double>(g.n, 0.0));
    const LagrangianState s0 = initial_state(d, build_ybar(d, 512));
    StepControls c;
    c.dt = 0.01;
    const LagrangianRun run = evolve(s0, ch_model(), 1.0, c, 20);
    CHECK(run.stop_reason == "completed");
    CHECK(run.report.energy_drift_rel == 0.0);
    CHECK(run.report.max_kxi_residual == 0.0);
    // The label positions carry one rounding unit per node, so the stretch
    // residual of the identity map is tiny but not exactly zero.
    CHECK(run.report.max_yxi_residual < 1e-12);
    for (double e : run.energies) CHECK(e == 0.0);
    const LagrangianState& last = run.snapshots.back();
    for (size_t i = 0; i < last.k.size(); ++i) {
        CHECK(last.k[i] == 0.0);
        CHECK(std::abs(last.y[i] - s0.y[i]) < 1e-15);
    }
}

TEST_CASE("smooth data conserves energy tightly over a short run") {
    const UniformGrid g = line_grid(10.0, 512);
    const InitialData d = gaussian_data(g, 0.5);
    const LagrangianState s0 = initial_state(d, build_ybar(d, 4096));
    StepControls c;
    c.dt = 1e-3;
    const LagrangianRun run = evolve(s0, ch_model(0.5), 0.5, c, 100);
    CHECK(run.stop_reason == "completed");
    CHECK(run.report.energy_drift_rel < 1e-8);
    CHECK(run.report.min_q > 0.5);
    const double e0 = run.energies.front();
    CHECK(run.report.max_abs_k <= std::sqrt(e0) * (1.0 + 1e-6));
    CHECK(run.report.max_kxi_residual < 1e-3);
    CHECK(run.report.max_yxi_residual < 1e-3);
}

TEST_CASE("a violent configuration fails loudly, not silently") {
    const UniformGrid g = line_grid(10.0, 256);
    const InitialData d = gaussian_data(g, 50.0);
    const LagrangianState s0 = initial_state(d, build_ybar(d, 512));
    StepControls c;
    c.dt = 1.0;
    const LagrangianRun run = evolve(s0, ch_model(), 3.0, c, 1);
    CHECK(run.stop_reason == "numerical_failure");
    CHECK_FALSE(run.error.empty());
}

}  // TEST_SUITE
