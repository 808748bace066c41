#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace conelp::cli {

// Exit codes of the command-line front end.
inline constexpr int kOk = 0;
inline constexpr int kParseError = 1;
inline constexpr int kSolverFailure = 2;

// `conelp solve|gen|bench ...`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conelp::cli
