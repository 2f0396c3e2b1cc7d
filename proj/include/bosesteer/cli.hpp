#pragma once
// Command-line front end. Subcommands: optimize, scan, basis, visibility,
// verify, trace, evaluate. Results go to --output (default stdout) as JSON
// or CSV, numbers at 12 significant digits.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace bosesteer::cli {

enum ExitCode : int { kOk = 0, kArgumentError = 2, kNumericalError = 3 };

/// Radians, either a decimal literal or a pi fraction such as "pi/2",
/// "-3pi/4", "2*pi/3". Returns nullopt on malformed input.
std::optional<double> parse_angle(std::string_view text);

/// Formats x with 12 significant digits.
std::string format_number(double x);

/// args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace bosesteer::cli
