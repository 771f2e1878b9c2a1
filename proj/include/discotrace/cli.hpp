#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace discotrace::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitBackendFailure = 2;

// args excludes the program name. "-" as --out writes to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace discotrace::cli
