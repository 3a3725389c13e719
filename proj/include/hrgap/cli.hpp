#pragma once

#include <string>
#include <vector>

namespace hrgap {

/// Exit codes: 0 success, 2 input/data error, 3 configuration error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 2;
inline constexpr int kExitConfigError = 3;

/// Runs the benchmark CLI. argv follows main() conventions (argv[0] is the
/// program name). Every behavior reachable here is a thin shell over the
/// library calls.
int run_cli(const std::vector<std::string>& argv);

}  // namespace hrgap
