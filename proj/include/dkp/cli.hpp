#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dkp::cli {

/// Exit-code contract.
inline constexpr int kPass = 0;
inline constexpr int kQuantitativeFailure = 1;
inline constexpr int kStructuralError = 2;

/// Runs one command line (without the program name). Reports go to `out` unless redirected
/// with -o; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dkp::cli
