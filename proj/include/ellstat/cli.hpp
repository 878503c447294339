#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ellstat::cli {

/// Runs one `ellstat` invocation. args[0] is the program name.
/// Returns 0 on success, 2 on usage errors, 1 on computation errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Radians, or a multiple of pi written with a "pi" suffix ("0.5pi", "pi").
double parse_angle(const std::string& text);

}  // namespace ellstat::cli
