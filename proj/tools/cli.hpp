#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mrlink::cli {

// Exit codes: 0 success, 1 internal error, 2 bad config / invalid spec / bad
// command line, 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mrlink::cli
