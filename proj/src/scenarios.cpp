#include "wave/scenarios.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "wave/diagnostics.hpp"

namespace wave {
namespace {

// Standard normal CDF, accurate in both tails.
double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Heat-kernel smoothing of e^{-|w|} has a closed form: convolving with a
// Gaussian of width sigma gives
//   I(w)  = e^{sigma^2/2} [ e^{-w} Phi((w - sigma^2)/sigma)
//                         + e^{ w} Phi(-(w + sigma^2)/sigma) ],
//   I'(w) = e^{sigma^2/2} [-e^{-w} Phi((w - sigma^2)/sigma)
//                         + e^{ w} Phi(-(w + sigma^2)/sigma) ]
// (the Gaussian density terms in I' cancel exactly). For |w| large the
// erfc factor underflows to zero before exp overflows, so the products
// stay finite on any domain we use.
double mollified_exp(double w, double sigma) {
    const double a = std::exp(0.5 * sigma * sigma);
    return a * (std::exp(-w) * norm_cdf((w - sigma * sigma) / sigma) +
                std::exp(w) * norm_cdf(-(w + sigma * sigma) / sigma));
}

double mollified_exp_dx(double w, double sigma) {
    const double a = std::exp(0.5 * sigma * sigma);
    return a * (-std::exp(-w) * norm_cdf((w - sigma * sigma) / sigma) +
                std::exp(w) * norm_cdf(-(w + sigma * sigma) / sigma));
}

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

double get(const std::map<std::string, double>& params, const ScenarioInfo& info,
           const std::string& name) {
    auto it = params.find(name);
    if (it != params.end()) return it->second;
    for (const auto& p : info.params)
        if (p.name == name) return p.value;
    throw std::logic_error("scenario parameter table inconsistent: " + name);
}

InitialData from_functions(const UniformGrid& grid,
                           const std::function<double(double)>& u,
                           const std::function<double(double)>& ux,
                           bool lagrangian_only) {
    std::vector<double> vals(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) vals[i] = u(grid.node(i));
    InitialData data;
    data.ubar = SampledProfile{grid, std::move(vals)};
    data.ubar_fn = u;
    data.ubar_x_fn = ux;
    data.lagrangian_only = lagrangian_only;
    return data;
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_library() {
    static const std::vector<ScenarioInfo> lib = {
        {"gaussian",
         "smooth bump a*exp(-(x-center)^2/(2 sigma^2))",
         {{"a", 0.5, "amplitude"},
          {"sigma", 1.0, "width"},
          {"center", 0.0, "bump location"}},
         {},
         false},
        {"peakon",
         "exact peaked traveling wave c*exp(-|x-x0|); kinked at the crest, so "
         "only the characteristic solver accepts it",
         {{"c", 1.0, "height and speed"}, {"x0", 0.0, "crest location"}},
         {},
         true},
        {"mollified_peakon",
         "peakon smoothed by a Gaussian of width sigma (closed form), usable "
         "by both solvers",
         {{"c", 1.0, "height"},
          {"x0", 0.0, "crest location"},
          {"sigma", 0.05, "smoothing width"}},
         {},
         false},
        {"peakon_antipeakon",
         "peakon at -separation/2 and antipeakon at +separation/2; collides "
         "and breaks in finite time. sigma > 0 smooths both crests",
         {{"c", 1.0, "height of each structure"},
          {"separation", 6.0, "initial crest distance"},
          {"sigma", 0.0, "smoothing width (0 = exact, characteristic solver only)"}},
         {"peakon_collision"},
         true},
        {"sign_changing",
         "momentum density built from two separated mollifier bumps of "
         "opposite sign (negative left, positive right)",
         {{"amplitude", 1.0, "bump height in the momentum variable"},
          {"separation", 4.0, "distance between bump centers (> 2)"}},
         {},
         false},
        {"small_data",
         "Gaussian bump rescaled so its Sobolev H^s norm equals epsilon",
         {{"epsilon", 1e-3, "target H^s norm"},
          {"s", 2.0, "Sobolev index"},
          {"sigma", 1.0, "bump width"}},
         {},
         false},
        {"breaking",
         "odd profile -slope*x*exp(-x^2/(2 sigma^2)) whose initial slope at "
         "the origin is -slope; steep choices break quickly",
         {{"slope", 3.0, "magnitude of the most negative initial slope"},
          {"sigma", 1.0, "profile width"}},
         {},
         false},
    };
    return lib;
}

const ScenarioInfo& scenario_info(const std::string& name) {
    for (const auto& info : scenario_library()) {
        if (info.name == name) return info;
        for (const auto& alias : info.aliases)
            if (alias == name) return info;
    }
    std::ostringstream msg;
    msg << "unknown scenario '" << name << "'; valid scenarios:";
    for (const auto& info : scenario_library()) msg << " " << info.name;
    throw std::invalid_argument(msg.str());
}

InitialData make_scenario(const std::string& name,
                          const std::map<std::string, double>& params,
                          const UniformGrid& x_grid) {
    const ScenarioInfo& info = scenario_info(name);
    for (const auto& kv : params) {
        bool known = false;
        for (const auto& p : info.params) known = known || p.name == kv.first;
        if (!known)
            throw std::invalid_argument("unknown parameter '" + kv.first +
                                        "' for scenario '" + info.name + "'");
    }

    if (info.name == "gaussian") {
        const double a = get(params, info, "a");
        const double sigma = get(params, info, "sigma");
        const double c0 = get(params, info, "center");
        if (sigma <= 0.0) throw std::invalid_argument("scenario gaussian: sigma must be positive");
        auto u = [=](double x) {
            const double w = x - c0;
            return a * std::exp(-w * w / (2.0 * sigma * sigma));
        };
        auto ux = [=](double x) {
            const double w = x - c0;
            return -a * w / (sigma * sigma) * std::exp(-w * w / (2.0 * sigma * sigma));
        };
        return from_functions(x_grid, u, ux, false);
    }

    if (info.name == "peakon") {
        const double c = get(params, info, "c");
        const double x0 = get(params, info, "x0");
        auto u = [=](double x) { return c * std::exp(-std::abs(x - x0)); };
        // sgn(0) = 0 puts slope zero at the crest itself, the symmetric
        // choice consistent with the crest being a maximum.
        auto ux = [=](double x) {
            const double w = x - x0;
            return -c * sgn(w) * std::exp(-std::abs(w));
        };
        return from_functions(x_grid, u, ux, true);
    }

    if (info.name == "mollified_peakon") {
        const double c = get(params, info, "c");
        const double x0 = get(params, info, "x0");
        const double sigma = get(params, info, "sigma");
        if (sigma <= 0.0)
            throw std::invalid_argument("scenario mollified_peakon: sigma must be positive");
        auto u = [=](double x) { return c * mollified_exp(x - x0, sigma); };
        auto ux = [=](double x) { return c * mollified_exp_dx(x - x0, sigma); };
        return from_functions(x_grid, u, ux, false);
    }

    if (info.name == "peakon_antipeakon") {
        const double c = get(params, info, "c");
        const double sep = get(params, info, "separation");
        const double sigma = get(params, info, "sigma");
        if (sep <= 0.0)
            throw std::invalid_argument("scenario peakon_antipeakon: separation must be positive");
        if (sigma < 0.0)
            throw std::invalid_argument("scenario peakon_antipeakon: sigma must be >= 0");
        const double a = 0.5 * sep;
        if (sigma == 0.0) {
            auto u = [=](double x) {
                return c * (std::exp(-std::abs(x + a)) - std::exp(-std::abs(x - a)));
            };
            auto ux = [=](double x) {
                return c * (-sgn(x + a) * std::exp(-std::abs(x + a)) +
                            sgn(x - a) * std::exp(-std::abs(x - a)));
            };
            return from_functions(x_grid, u, ux, true);
        }
        auto u = [=](double x) {
            return c * (mollified_exp(x + a, sigma) - mollified_exp(x - a, sigma));
        };
        auto ux = [=](double x) {
            return c * (mollified_exp_dx(x + a, sigma) - mollified_exp_dx(x - a, sigma));
        };
        return from_functions(x_grid, u, ux, false);
    }

    if (info.name == "sign_changing") {
        const double amp = get(params, info, "amplitude");
        const double sep = get(params, info, "separation");
        SampledProfile u = make_sign_changing_data(amp, sep, x_grid);
        InitialData data;
        data.ubar = std::move(u);
        data.lagrangian_only = false;
        return data;
    }

    if (info.name == "small_data") {
        const double eps = get(params, info, "epsilon");
        const double s = get(params, info, "s");
        const double sigma = get(params, info, "sigma");
        if (eps <= 0.0) throw std::invalid_argument("scenario small_data: epsilon must be positive");
        if (sigma <= 0.0) throw std::invalid_argument("scenario small_data: sigma must be positive");
        // Sample a unit-amplitude bump, measure its H^s norm on this grid,
        // and rescale so the sampled data hits the target norm exactly.
        std::vector<double> vals(x_grid.n);
        for (std::size_t i = 0; i < x_grid.n; ++i) {
            const double x = x_grid.node(i);
            vals[i] = std::exp(-x * x / (2.0 * sigma * sigma));
        }
        SampledProfile unit{x_grid, std::move(vals)};
        const double scale = eps / sobolev_norm(unit, s);
        auto u = [=](double x) {
            return scale * std::exp(-x * x / (2.0 * sigma * sigma));
        };
        auto ux = [=](double x) {
            return -scale * x / (sigma * sigma) * std::exp(-x * x / (2.0 * sigma * sigma));
        };
        return from_functions(x_grid, u, ux, false);
    }

    if (info.name == "breaking") {
        const double slope = get(params, info, "slope");
        const double sigma = get(params, info, "sigma");
        if (slope <= 0.0) throw std::invalid_argument("scenario breaking: slope must be positive");
        if (sigma <= 0.0) throw std::invalid_argument("scenario breaking: sigma must be positive");
        auto u = [=](double x) {
            return -slope * x * std::exp(-x * x / (2.0 * sigma * sigma));
        };
        auto ux = [=](double x) {
            return -slope * (1.0 - x * x / (sigma * sigma)) *
                   std::exp(-x * x / (2.0 * sigma * sigma));
        };
        return from_functions(x_grid, u, ux, false);
    }

    throw std::logic_error("scenario dispatch incomplete: " + info.name);
}

}  // namespace wave
