#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qca::cli {

// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qca::cli
