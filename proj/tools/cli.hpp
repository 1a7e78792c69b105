#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace reskit::cli {

/// Exit codes: 0 success, 1 data or numerical error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace reskit::cli
