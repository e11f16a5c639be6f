#include "wave/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wave/diagnostics.hpp"
#include "wave/eulerian.hpp"
#include "wave/flux.hpp"
#include "wave/lagrangian.hpp"
#include "wave/scenarios.hpp"
#include "wave/semilinear.hpp"

namespace wave {
namespace {

namespace fs = std::filesystem;

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string snapshot_name(const char* prefix, double t) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s_t%.6f.csv", prefix, t);
    return buf;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

// One row of the shared series schema. min_ux and max_abs_u are in the
// physical (u) variable for both solvers.
struct SeriesRow {
    double t, energy, min_ux, max_abs_u;
};

std::string series_csv(const std::vector<SeriesRow>& rows) {
    std::ostringstream out;
    out << "t,E_weighted,min_ux,max_abs_u\n";
    for (const auto& r : rows)
        out << fmt(r.t) << "," << fmt(r.energy) << "," << fmt(r.min_ux) << ","
            << fmt(r.max_abs_u) << "\n";
    return out.str();
}

SeriesRow lagrangian_series_row(const LagrangianState& st, double lambda) {
    const double decay = std::exp(-lambda * st.t);
    SlopeField slopes = slope_from_v(st);
    double min_kx = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < slopes.kx.size(); ++i) {
        if (!slopes.valid[i]) continue;
        if (!any || slopes.kx[i] < min_kx) min_kx = slopes.kx[i];
        any = true;
    }
    double max_k = 0.0;
    for (double k : st.k) max_k = std::max(max_k, std::abs(k));
    return {st.t, lagrangian_energy(st), any ? decay * min_kx : 0.0, decay * max_k};
}

// Report entries keep insertion order so reruns produce identical bytes.
struct Report {
    std::vector<std::pair<std::string, std::string>> entries;
    void add(const std::string& key, const std::string& value) {
        entries.emplace_back(key, value);
    }
    void add(const std::string& key, double value) { add(key, fmt(value)); }
    std::string text() const {
        std::ostringstream out;
        for (const auto& e : entries) out << e.first << "=" << e.second << "\n";
        return out.str();
    }
};

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return out;
}

// Runs one check against the stored trajectories and appends its verdict
// plus its metrics to the report. Returns false only on a hard failure.
bool run_check(const std::string& name, const RunSpec& spec, const InitialData& data,
               const FluxModel& model, const EulerianRun* erun, Report& report) {
    try {
        if (name == "momentum_invariant") {
            // First pass sizes the invariant at a dense label set; the second
            // tracks only labels carrying real signal, since a relative
            // deviation at a root of the momentum measures nothing.
            const auto cand = linspace(spec.x_min / 2.0, spec.x_max / 2.0, 161);
            MomentumTrack track = momentum_invariant_check(*erun, model, cand);
            double base_max = 0.0;
            for (double b : track.base) base_max = std::max(base_max, std::fabs(b));
            std::vector<double> solid;
            for (std::size_t j = 0; j < cand.size(); ++j)
                if (std::fabs(track.base[j]) >= 1e-2 * base_max)
                    solid.push_back(cand[j]);
            if (solid.size() >= 3)
                track = momentum_invariant_check(*erun, model, solid);
            report.add("momentum_seeds_used",
                       double(solid.size() >= 3 ? solid.size() : cand.size()));
            report.add("momentum_max_rel_deviation", track.max_rel_deviation);
            const bool ok = track.max_rel_deviation <= 1e-3;
            report.add(name, ok ? "pass" : "fail");
            return ok;
        }
        if (name == "sign_pattern") {
            const auto verdicts = sign_pattern_check(*erun, model, 0.0);
            std::size_t violations = 0;
            for (auto v : verdicts) violations += v ? 0 : 1;
            report.add("sign_pattern_violations", double(violations));
            report.add(name, violations == 0 ? "pass" : "fail");
            return violations == 0;
        }
        if (name == "ux_lower_bound") {
            UxBoundResult res = ux_lower_bound_check(*erun);
            report.add("min_ux_observed", res.min_ux);
            report.add("ux_bound_value", res.bound);
            report.add(name, res.pass ? "pass" : "fail");
            return res.pass;
        }
        if (name == "small_data_decay") {
            double s = 2.0;
            auto it = spec.scenario_params.find("s");
            if (it != spec.scenario_params.end()) s = it->second;
            DecayResult res = small_data_decay_check(*erun, model, s);
            double max_ratio = 0.0;
            for (std::size_t i = 0; i < res.times.size(); ++i) {
                const double bound = res.norm_sq.front() * std::exp(-model.lambda * res.times[i]);
                if (bound > 0.0) max_ratio = std::max(max_ratio, res.norm_sq[i] / bound);
            }
            report.add("decay_max_ratio", max_ratio);
            report.add(name, res.pass ? "pass" : "fail");
            return res.pass;
        }
        if (name == "continuous_dependence") {
            DependenceOptions opt;
            opt.n_xi = spec.n_xi;
            opt.controls.dt = spec.dt;
            const double T = std::min(spec.t_final, 1.0);
            const std::vector<double> sizes = {1e-2, 5e-3, 2.5e-3};
            std::vector<double> dists;
            for (double sz : sizes)
                dists.push_back(continuous_dependence_check(data, model, sz, T, opt).max_dist);
            double ratio_max = 0.0;
            for (std::size_t i = 0; i + 1 < dists.size(); ++i) {
                report.add("dependence_distance_" + std::to_string(i), dists[i]);
                if (dists[i] > 0.0) ratio_max = std::max(ratio_max, dists[i + 1] / dists[i]);
            }
            report.add("dependence_distance_" + std::to_string(dists.size() - 1), dists.back());
            report.add("dependence_ratio_max", ratio_max);
            const bool ok = ratio_max <= 0.75;
            report.add(name, ok ? "pass" : "fail");
            return ok;
        }
    } catch (const std::exception& e) {
        const std::string what = e.what();
        if (what.find("invariant not applicable") != std::string::npos) {
            report.add(name, "n/a");
            report.add(name + "_note", what);
            return true;  // not applicable is not a failure
        }
        report.add(name, "fail");
        report.add(name + "_error", what);
        return false;
    }
    throw std::logic_error("check dispatch incomplete: " + name);
}

}  // namespace

RunOutcome run(const RunSpec& spec) {
    const bool want_lagrangian = spec.solver != "eulerian";
    const bool want_eulerian = spec.solver != "lagrangian";

    UniformGrid grid(spec.x_min, (spec.x_max - spec.x_min) / double(spec.n_x), spec.n_x);
    InitialData data = make_scenario(spec.scenario, spec.scenario_params, grid);
    FluxModel model = make_flux(spec.f_coeffs, spec.g_coeffs, spec.lambda);

    if (want_eulerian && data.lagrangian_only)
        throw std::invalid_argument(
            "scenario '" + spec.scenario +
            "' produces kinked initial data the spectral solver cannot represent; "
            "set solver = lagrangian or use a mollified variant (mollified_peakon, "
            "or sigma > 0)");

    const char* root_env = std::getenv("WAVE_OUTPUT_ROOT");
    const fs::path root = root_env ? fs::path(root_env) : fs::path(".");
    const fs::path dir =
        root / (spec.output_dir.empty() ? "runs/" + spec.scenario : spec.output_dir);
    fs::create_directories(dir);

    Report report;
    report.add("scenario", spec.scenario);
    for (const auto& kv : spec.scenario_params)
        report.add("scenario." + kv.first, kv.second);
    report.add("solver", spec.solver);
    report.add("flux.lambda", model.lambda);
    report.add("grid.n_x", double(spec.n_x));
    report.add("grid.n_xi", double(spec.n_xi));
    report.add("time.T", spec.t_final);
    report.add("time.dt", spec.dt);

    if (!data.ubar.boundary_decay_ok(1e-10))
        std::cerr << "warning: initial data is not negligible near the domain "
                     "boundary; line-domain results may be distorted\n";

    bool solver_failed = false;

    if (want_lagrangian) {
        YbarMap map = build_ybar(data, spec.n_xi);
        LagrangianState state0 = initial_state(data, map);
        StepControls controls;
        controls.dt = spec.dt;
        LagrangianRun lrun =
            evolve(state0, model, spec.t_final, controls, int(spec.sample_every));

        std::vector<SeriesRow> rows;
        for (std::size_t i = 0; i < lrun.snapshots.size(); ++i) {
            rows.push_back(lagrangian_series_row(lrun.snapshots[i], model.lambda));
            write_file(dir / snapshot_name("lagrangian", lrun.snapshot_times[i]),
                       state_csv(lrun.snapshots[i]));
        }
        write_file(dir / "series_lagrangian.csv", series_csv(rows));

        report.add("lagrangian_stop_reason", lrun.stop_reason);
        if (!lrun.error.empty()) report.add("lagrangian_error", lrun.error);
        report.add("energy_drift_rel", lrun.report.energy_drift_rel);
        report.add("max_kxi_residual", lrun.report.max_kxi_residual);
        report.add("max_yxi_residual", lrun.report.max_yxi_residual);
        report.add("min_q", lrun.report.min_q);
        report.add("max_abs_k", lrun.report.max_abs_k);
        report.add("max_abs_v", lrun.report.max_abs_v);
        report.add("max_nonlocal_ratio", lrun.report.max_nonlocal_ratio);
        solver_failed = solver_failed || lrun.stop_reason == "numerical_failure";
    }

    EulerianRun erun;
    if (want_eulerian) {
        EulerianState state0{0.0, data.ubar};
        BlowupMonitor monitor = make_blowup_monitor(data.ubar);
        if (spec.blowup_threshold) monitor.threshold = *spec.blowup_threshold;
        erun = eulerian_evolve(state0, model, spec.t_final, spec.dt, monitor,
                               int(spec.sample_every));

        std::vector<SeriesRow> rows;
        for (std::size_t i = 0; i < erun.times.size(); ++i) {
            rows.push_back({erun.times[i], erun.weighted_E[i], erun.min_ux[i],
                            erun.max_abs_u[i]});
            write_file(dir / snapshot_name("eulerian", erun.times[i]),
                       profile_csv(erun.u[i]));
        }
        write_file(dir / "series_eulerian.csv", series_csv(rows));

        report.add("stop_reason", erun.stop_reason);
        if (!erun.error.empty()) report.add("eulerian_error", erun.error);
        report.add("under_resolved", erun.under_resolved ? "true" : "false");
        if (!erun.weighted_E.empty() && erun.weighted_E.front() > 0.0) {
            double drift = 0.0;
            for (double e : erun.weighted_E)
                drift = std::max(drift, std::abs(e - erun.weighted_E.front()) /
                                            erun.weighted_E.front());
            report.add("weighted_energy_drift_rel", drift);
        }
        solver_failed = solver_failed || erun.stop_reason == "numerical_failure";
    }

    bool checks_ok = true;
    for (const auto& name : spec.checks) {
        const EulerianRun* er = want_eulerian ? &erun : nullptr;
        checks_ok = run_check(name, spec, data, model, er, report) && checks_ok;
    }

    RunOutcome outcome;
    outcome.run_dir = dir.string();
    outcome.exit_code =
        solver_failed ? kExitError : (checks_ok ? kExitOk : kExitCheckFailed);
    report.add("exit_code", std::to_string(outcome.exit_code));
    write_file(dir / "report.txt", report.text());
    return outcome;
}

namespace {

int cmd_run(const std::string& config_path) {
    RunSpec spec;
    try {
        spec = parse_config_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    try {
        RunOutcome outcome = run(spec);
        std::cout << "run directory: " << outcome.run_dir << "\n";
        std::ifstream report(fs::path(outcome.run_dir) / "report.txt");
        std::string line;
        while (std::getline(report, line)) std::cout << line << "\n";
        return outcome.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}

int cmd_scenarios() {
    for (const auto& info : scenario_library()) {
        std::cout << info.name;
        if (!info.aliases.empty()) {
            std::cout << " (alias:";
            for (const auto& a : info.aliases) std::cout << " " << a;
            std::cout << ")";
        }
        if (info.lagrangian_only) std::cout << " [lagrangian solver only]";
        std::cout << "\n    " << info.doc << "\n";
        for (const auto& p : info.params) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", p.value);
            std::cout << "    scenario." << p.name << " = " << buf << "  (" << p.doc
                      << ")\n";
        }
    }
    return kExitOk;
}

int cmd_check(const std::string& run_dir) {
    std::ifstream in(fs::path(run_dir) / "report.txt");
    if (!in) {
        std::cerr << "error: no report.txt under " << run_dir << "\n";
        return kExitError;
    }
    bool any_fail = false;
    std::string line;
    while (std::getline(in, line)) {
        std::cout << line << "\n";
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string value = line.substr(eq + 1);
        const std::string key = line.substr(0, eq);
        if (value == "fail" || value == "numerical_failure") any_fail = true;
        if (key == "exit_code" && value == "2") any_fail = true;
    }
    return any_fail ? kExitCheckFailed : kExitOk;
}

}  // namespace

int cli_main(int argc, char** argv) {
    const auto usage = []() {
        std::cerr << "usage: wave run <config-file> | wave scenarios | wave check <run-dir>\n";
        return kExitError;
    };
    if (argc < 2) return usage();
    const std::string cmd = argv[1];
    if (cmd == "run") {
        if (argc != 3) return usage();
        return cmd_run(argv[2]);
    }
    if (cmd == "scenarios") {
        if (argc != 2) return usage();
        return cmd_scenarios();
    }
    if (cmd == "check") {
        if (argc != 3) return usage();
        return cmd_check(argv[2]);
    }
    return usage();
}

}  // namespace wave
