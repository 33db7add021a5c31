#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace tvd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRefused = 1;
inline constexpr int kExitInputError = 2;

/// Runs one invocation; `args` excludes the program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace tvd
