// Polynomial flux pair (f, g) with exact symbolic derivatives, plus the
// structural condition checks (f''' == 0, f'' >= gamma > 0, g' == 2 f'' u)
// that gate the strong-solution diagnostics.
#pragma once

#include <string>
#include <vector>

namespace wave {

enum class Deriv { f, fp, fpp, fppp, g, gp };

struct FluxModel {
    // Ascending-degree coefficients, trailing zeros trimmed.
    std::vector<double> f_coeffs;
    std::vector<double> g_coeffs;
    double lambda = 0.0;  // dissipation rate, >= 0

    // Precomputed derivative polynomials.
    std::vector<double> fp_coeffs, fpp_coeffs, fppp_coeffs, gp_coeffs;
};

struct ConditionReport {
    bool f_triple_prime_zero = false;
    // Largest gamma with f'' >= gamma on the checked interval; the exact
    // constant when f'' is constant.
    double f_double_prime_lower_bound = 0.0;
    bool g_prime_matches = false;  // g'(u) == 2 f''(u) u as polynomials
};

// Validates g(0) = 0, f'' not identically zero, lambda >= 0; precomputes all
// derivative polynomials. Throws std::invalid_argument with the violated
// condition named ("invalid flux model: ...").
FluxModel make_flux(std::vector<double> f_coeffs, std::vector<double> g_coeffs,
                    double lambda);

// Horner evaluation of the requested symbol at u.
double eval(const FluxModel& model, Deriv which, double u);

// gamma is the constant f'' when f''' == 0; otherwise the infimum of f'' over
// [-interval_halfwidth, interval_halfwidth] (exact critical-point scan). The
// interval only matters for non-constant f''.
ConditionReport check_theorem_conditions(const FluxModel& model,
                                         double interval_halfwidth = 1.0);

// Ascending-degree polynomial utilities shared with tests.
std::vector<double> poly_derive(const std::vector<double>& c);
double poly_eval(const std::vector<double>& c, double u);

}  // namespace wave
