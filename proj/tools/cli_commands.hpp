#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace softcr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitValidation = 2;

/// Runs the `softcr` command line. `args` excludes the program name.
/// Human-readable output goes to `out`; errors are written to `err` as a
/// single JSON document {"error": {"kind": ..., "message": ...}}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace softcr::cli
