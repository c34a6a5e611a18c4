#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oriflag::cli {

// Exit codes: 0 success, 1 runtime failure, 2 usage error, 3 verification mismatch.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oriflag::cli
