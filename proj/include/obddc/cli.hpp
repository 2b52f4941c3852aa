#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace obddc {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 success, 1 parse/usage error, 2 strategy inapplicable,
// 3 budget or guard exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace obddc
