#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace momlab::cli {

inline constexpr const char* kSchema = "mom-lab/1";
inline constexpr const char* kVersion = "0.1.0";

/// Runs one mom-lab invocation. args excludes the program name. Returns 0 on
/// success, 2 on usage errors and 1 on computational errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace momlab::cli
