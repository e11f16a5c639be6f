#include "wave/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wave/flux.hpp"
#include "wave/scenarios.hpp"

namespace wave {
namespace {

const std::vector<std::string> kCheckNames = {
    "momentum_invariant", "sign_pattern", "ux_lower_bound",
    "small_data_decay", "continuous_dependence",
};

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("key '" + key + "': cannot parse '" + value +
                                    "' as a number");
    }
    if (pos != value.size())
        throw std::invalid_argument("key '" + key + "': trailing characters in '" + value + "'");
    return out;
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    const double d = parse_double(key, value);
    if (d < 0.0 || d != static_cast<double>(static_cast<long long>(d)))
        throw std::invalid_argument("key '" + key + "': expected a nonnegative integer, got '" +
                                    value + "'");
    return static_cast<std::size_t>(d);
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    if (out.empty())
        throw std::invalid_argument("key '" + key + "': expected a comma-separated list");
    return out;
}

std::vector<std::string> parse_names(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

RunSpec parse_config(const std::string& text) {
    RunSpec spec;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "line " << lineno << ": expected key = value, got '" << line << "'";
            throw std::invalid_argument(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            std::ostringstream msg;
            msg << "line " << lineno << ": empty key or value";
            throw std::invalid_argument(msg.str());
        }

        if (key == "scenario") {
            spec.scenario = value;
        } else if (key.rfind("scenario.", 0) == 0) {
            spec.scenario_params[key.substr(9)] = parse_double(key, value);
        } else if (key == "flux.f") {
            spec.f_coeffs = parse_list(key, value);
        } else if (key == "flux.g") {
            spec.g_coeffs = parse_list(key, value);
        } else if (key == "flux.lambda") {
            spec.lambda = parse_double(key, value);
        } else if (key == "grid.n_x") {
            spec.n_x = parse_size(key, value);
        } else if (key == "grid.x_min") {
            spec.x_min = parse_double(key, value);
        } else if (key == "grid.x_max") {
            spec.x_max = parse_double(key, value);
        } else if (key == "grid.n_xi") {
            spec.n_xi = parse_size(key, value);
        } else if (key == "time.T") {
            spec.t_final = parse_double(key, value);
        } else if (key == "time.dt") {
            spec.dt = parse_double(key, value);
        } else if (key == "time.sample_every") {
            spec.sample_every = parse_size(key, value);
        } else if (key == "solver") {
            spec.solver = value;
        } else if (key == "checks") {
            spec.checks = parse_names(value);
        } else if (key == "eulerian.blowup_threshold") {
            spec.blowup_threshold = parse_double(key, value);
        } else if (key == "output_dir") {
            spec.output_dir = value;
        } else {
            throw std::invalid_argument("unknown key '" + key + "'");
        }
    }

    // Cross-field validation, cheapest first.
    if (spec.blowup_threshold && !(*spec.blowup_threshold < 0.0))
        throw std::invalid_argument("eulerian.blowup_threshold must be negative");
    if (spec.dt <= 0.0) throw std::invalid_argument("time.dt must be positive");
    if (spec.t_final <= 0.0) throw std::invalid_argument("time.T must be positive");
    if (spec.sample_every == 0)
        throw std::invalid_argument("time.sample_every must be >= 1");
    if (!power_of_two(spec.n_x) || spec.n_x < 16)
        throw std::invalid_argument("grid.n_x must be a power of two >= 16");
    if (!(spec.x_max > spec.x_min))
        throw std::invalid_argument("grid.x_max must exceed grid.x_min");
    if (spec.n_xi < 16) throw std::invalid_argument("grid.n_xi must be >= 16");
    if (spec.solver != "lagrangian" && spec.solver != "eulerian" && spec.solver != "both")
        throw std::invalid_argument("solver must be lagrangian, eulerian, or both");

    // Flux coefficients get the full model validation up front.
    make_flux(spec.f_coeffs, spec.g_coeffs, spec.lambda);

    // Scenario name and parameter names must resolve against the registry.
    const ScenarioInfo& info = scenario_info(spec.scenario);
    for (const auto& kv : spec.scenario_params) {
        bool known = false;
        for (const auto& p : info.params) known = known || p.name == kv.first;
        if (!known)
            throw std::invalid_argument("unknown parameter '" + kv.first + "' for scenario '" +
                                        info.name + "'");
    }

    for (const auto& name : spec.checks) {
        if (std::find(kCheckNames.begin(), kCheckNames.end(), name) == kCheckNames.end()) {
            std::ostringstream msg;
            msg << "unknown check '" << name << "'; valid checks:";
            for (const auto& c : kCheckNames) msg << " " << c;
            throw std::invalid_argument(msg.str());
        }
        const bool needs_eulerian = name != "continuous_dependence";
        if (needs_eulerian && spec.solver == "lagrangian")
            throw std::invalid_argument("check '" + name + "' requires the eulerian solver");
        if (name == "continuous_dependence" && spec.solver == "eulerian")
            throw std::invalid_argument("check '" + name + "' requires the lagrangian solver");
    }

    return spec;
}

RunSpec parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace wave
