#pragma once

#include <iosfwd>

namespace radiosteg::cli {

/// Default output directory when --output-dir is not given.
inline constexpr const char* kOutputDirEnv = "RADIOSTEG_OUTPUT_DIR";

/// Runs the command line. Returns 0 on success, 2 on usage errors (unknown
/// subcommand or flag, bad value, unreadable or invalid config file) and 1 on
/// runtime failures such as an unwritable output directory.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace radiosteg::cli
