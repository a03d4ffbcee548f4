#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cherednik::cli {

// Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
// 3 inconclusive result.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cherednik::cli
