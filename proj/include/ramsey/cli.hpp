#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ramsey {

inline constexpr const char* kToolVersion = "0.1.0";

/// args excludes the program name. Returns the process exit code:
/// 0 holds/success, 1 fails/not found, 2 usage or input error, 3 cap.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ramsey
