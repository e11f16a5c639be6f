// Orchestration: takes a validated RunSpec, produces a run directory with
// snapshot CSVs, time-series CSVs, and a key = value report, and maps the
// outcome to a process exit code. Also hosts the CLI entry point.
#pragma once

#include <string>

#include "wave/config.hpp"

namespace wave {

// Exit codes shared by run() and the CLI.
//   0  run completed and every requested check passed (or was n/a)
//   1  run completed but at least one check failed
//   2  solver or configuration failure
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitError = 2;

struct RunOutcome {
    int exit_code = kExitOk;
    std::string run_dir;
};

// Executes the run. Output lands under WAVE_OUTPUT_ROOT (or the working
// directory when unset) in spec.output_dir, defaulting to runs/<scenario>.
// Configuration-level impossibilities (for instance kinked initial data
// sent to the spectral solver) throw std::invalid_argument; solver-level
// failures are recorded in the report and mapped to exit code 2.
RunOutcome run(const RunSpec& spec);

// wave run <config> | wave scenarios | wave check <run_dir>
int cli_main(int argc, char** argv);

}  // namespace wave
