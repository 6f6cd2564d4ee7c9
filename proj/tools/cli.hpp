#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace corrcolor::cli {

/// Runs one corrcolor command line. Returns 0 on success, 1 on domain
/// errors (including unsuccessful runs), 2 on malformed input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace corrcolor::cli
