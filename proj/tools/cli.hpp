#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entwit::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

// Runs the command line `args` (without the program name). Data goes to --out when
// given, otherwise to `out`; with --out, `out` receives a one-line summary.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "pi/8", "3pi/8", "-pi/4", "3*pi/8", "0.25", "1/3"
double parse_angle(const std::string& text);
std::vector<double> parse_angle_list(const std::string& text);

// "start:stop:points" with points >= 2, inclusive endpoints.
std::vector<double> parse_grid(const std::string& text);

}  // namespace entwit::cli
