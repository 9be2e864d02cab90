#pragma once

#include <vector>
#include <string>

namespace mbios::cli {

inline constexpr const char* kVersion = "1.0.0";

// Exit codes: 0 success, 2 input error, 3 numerical failure.
int run(const std::vector<std::string>& argv);

}  // namespace mbios::cli
