#pragma once

#include <string>

namespace np3 {

// Process exit codes, shared by the C API status values.
enum class RunStatus : int {
    Ok = 0,
    CheckFailed = 1,
    Usage = 2,
    Numeric = 3,
};

struct RunResult {
    RunStatus status = RunStatus::Ok;
    std::string output;  // JSON {config, results, summary, version} or table
    std::string csv;     // trace for flow runs, empty otherwise
    std::string error;   // diagnostic when status is Usage or Numeric
};

// Executes one command described by a JSON config:
//   command: catalog_list | catalog_show | analyze | verify | flow | principal
//   manifold, field, params {r, lambda}, custom_chart (declarative JSON text),
//   point [u1,u2,u3], samples, seed, tol, fd_step, length, step, format.
// Unspecified values fall back to the catalog entry's defaults; seed defaults
// to 42. Never throws: failures are reported through status + error.
RunResult run_command(const std::string& config_json);

const char* version_string();

}  // namespace np3
