#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pervq::cli {

// Exit codes: 0 success, 1 domain error, 2 parse error or bad usage.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

// args excludes the program name. FILE arguments may be "-" for `in`.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pervq::cli
