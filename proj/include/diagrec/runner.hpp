#pragma once

#include <optional>
#include <string>

#include "diagrec/config.hpp"

namespace diagrec {

struct RunOptions {
    std::string out_dir = ".";
    std::string format = "csv";
    std::optional<double> tol;  // overrides the config tolerance
    int jobs = 1;
};

// Executes one subcommand against a parsed config, writing CSV artifacts and
// report.json into out_dir. Returns the process exit code (0 on success,
// 1 when `check` or `floquet` finds the input invalid); numeric and
// validation failures propagate as exceptions for the CLI to map.
int run_command(const std::string& command, const JobConfig& cfg, const RunOptions& opts);

} // namespace diagrec
