#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dagwish {

inline constexpr const char* kVersion = "0.1.0";

// Runs one CLI invocation; args excludes the program name. Exit codes:
// 0 success, 1 computation error (JSON on err), 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace dagwish
