#include "wave/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wave {

static std::vector<double> trim(std::vector<double> c) {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    return c;
}

std::vector<double> poly_derive(const std::vector<double>& c) {
    std::vector<double> d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(double(i) * c[i]);
    return trim(std::move(d));
}

double poly_eval(const std::vector<double>& c, double u) {
    double acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * u + c[i];
    return acc;
}

FluxModel make_flux(std::vector<double> f_coeffs, std::vector<double> g_coeffs,
                    double lambda) {
    for (double c : f_coeffs)
        if (!std::isfinite(c)) throw std::invalid_argument("invalid flux model: non-finite f coefficient");
    for (double c : g_coeffs)
        if (!std::isfinite(c)) throw std::invalid_argument("invalid flux model: non-finite g coefficient");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("invalid flux model: lambda < 0");

    FluxModel m;
    m.f_coeffs = trim(std::move(f_coeffs));
    m.g_coeffs = trim(std::move(g_coeffs));
    m.lambda = lambda;

    if (!m.g_coeffs.empty() && m.g_coeffs[0] != 0.0)
        throw std::invalid_argument("invalid flux model: g(0) != 0");

    m.fp_coeffs = poly_derive(m.f_coeffs);
    m.fpp_coeffs = poly_derive(m.fp_coeffs);
    m.fppp_coeffs = poly_derive(m.fpp_coeffs);
    m.gp_coeffs = poly_derive(m.g_coeffs);

    if (m.fpp_coeffs.empty())
        throw std::invalid_argument("invalid flux model: f'' == 0");
    return m;
}

double eval(const FluxModel& model, Deriv which, double u) {
    switch (which) {
        case Deriv::f: return poly_eval(model.f_coeffs, u);
        case Deriv::fp: return poly_eval(model.fp_coeffs, u);
        case Deriv::fpp: return poly_eval(model.fpp_coeffs, u);
        case Deriv::fppp: return poly_eval(model.fppp_coeffs, u);
        case Deriv::g: return poly_eval(model.g_coeffs, u);
        case Deriv::gp: return poly_eval(model.gp_coeffs, u);
    }
    throw std::logic_error("eval: bad selector");
}

// Infimum of polynomial p over [-U, U]: endpoints plus real roots of p'
// inside the interval, the roots bracketed by a sign scan and polished by
// bisection. Exact for the polynomial degrees this project uses.
static double poly_min_on_interval(const std::vector<double>& p, double U) {
    const std::vector<double> dp = poly_derive(p);
    double best = std::min(poly_eval(p, -U), poly_eval(p, U));
    const int cells = 4096;
    double prev_x = -U, prev_s = poly_eval(dp, -U);
    for (int i = 1; i <= cells; ++i) {
        const double x = -U + 2.0 * U * double(i) / cells;
        const double s = poly_eval(dp, x);
        if ((prev_s <= 0.0 && s >= 0.0) || (prev_s >= 0.0 && s <= 0.0)) {
            double lo = prev_x, hi = x;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double sm = poly_eval(dp, mid);
                if ((sm <= 0.0) == (prev_s <= 0.0)) lo = mid; else hi = mid;
            }
            best = std::min(best, poly_eval(p, 0.5 * (lo + hi)));
        }
        prev_x = x;
        prev_s = s;
    }
    return best;
}

ConditionReport check_theorem_conditions(const FluxModel& model,
                                         double interval_halfwidth) {
    ConditionReport r;
    r.f_triple_prime_zero = model.fppp_coeffs.empty();

    if (r.f_triple_prime_zero) {
        // f'' is the exact constant.
        r.f_double_prime_lower_bound = model.fpp_coeffs.empty() ? 0.0 : model.fpp_coeffs[0];
    } else {
        r.f_double_prime_lower_bound =
            poly_min_on_interval(model.fpp_coeffs, std::fabs(interval_halfwidth));
    }

    // g'(u) == 2 f''(u) u by exact coefficient comparison, no tolerance.
    std::vector<double> rhs(model.fpp_coeffs.size() + 1, 0.0);
    for (size_t i = 0; i < model.fpp_coeffs.size(); ++i) rhs[i + 1] = 2.0 * model.fpp_coeffs[i];
    while (!rhs.empty() && rhs.back() == 0.0) rhs.pop_back();
    r.g_prime_matches = (rhs == model.gp_coeffs);
    return r;
}

}  // namespace wave
