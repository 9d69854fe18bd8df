#pragma once

// Command-line front end: constants ledger, bound tables, verification and
// kernel property checks.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace supnorm {

enum ExitCode : int {
    kExitPass = 0,
    kExitVerificationFailed = 1,
    kExitInputError = 2,
    kExitUnsupported = 3,
    kExitKernelCheckFailed = 4,
};

struct CliConfig {
    std::string command;
    std::string domain_path;  // empty selects the built-in modular group
    double Y0 = 2.0;
    std::optional<double> Y;
    int k_min = 2;
    int k_max = 30;
    int grid_size = 100;
    std::string output_format = "csv";
    std::string output_path;
    std::vector<int> weights = {12};
    std::optional<double> transform_tol;
};

/// Parses argv and runs the selected command; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs a parsed configuration.
int run_command(const CliConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace supnorm
