#pragma once

#include <string>
#include <vector>

namespace funnelctl {

enum ExitCode : int { exit_ok = 0, exit_analysis_fail = 1, exit_config_error = 2, exit_run_failure = 3 };

std::vector<std::string> list_suites();

// Entry point shared by the executable and the tests. args excludes the program name.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace funnelctl
