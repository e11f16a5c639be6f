// Run configuration: a flat key = value text format with # comments.
// parse_config validates everything it can before any solver starts, so a
// bad file fails fast with a message naming the offending key.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wave {

struct RunSpec {
    std::string scenario = "gaussian";
    std::map<std::string, double> scenario_params;

    // Flux triple; defaults give the classical quadratic model with no decay.
    std::vector<double> f_coeffs = {0.0, 0.0, 0.5};
    std::vector<double> g_coeffs = {0.0, 0.0, 1.0};
    double lambda = 0.0;

    std::size_t n_x = 4096;
    double x_min = -20.0;
    double x_max = 20.0;
    std::size_t n_xi = 8192;

    double t_final = 1.0;
    double dt = 1e-3;
    std::size_t sample_every = 10;

    std::string solver = "both";  // lagrangian | eulerian | both
    std::vector<std::string> checks;

    // Overrides the spectral solver's stopping slope. The built-in default
    // of -50 (1 + max |ubar_x|) certifies extreme divergence, but on grids
    // the dealiased scheme can afford, a genuine collapse saturates near
    // -sqrt(E/dx) first; pass a bar the grid can express to stop there.
    std::optional<double> blowup_threshold;

    // Relative to WAVE_OUTPUT_ROOT (or the working directory when unset).
    std::string output_dir;
};

// Parses and validates; throws std::invalid_argument naming the bad key.
RunSpec parse_config(const std::string& text);

// Convenience wrapper: reads the file, then parses. Throws on I/O failure.
RunSpec parse_config_file(const std::string& path);

}  // namespace wave
