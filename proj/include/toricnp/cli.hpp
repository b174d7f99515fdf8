#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toricnp {

/// Exit codes: 0 success, 2 parse or usage error, 3 inhomogeneous system,
/// 4 unsupported construct, 5 internal invariant violation.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toricnp
