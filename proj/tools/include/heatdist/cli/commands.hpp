#pragma once

// Subcommands of the heatdist executable. Exit codes: 0 success (every check
// passed), 1 a computation or check failed, 2 configuration error.

#include "heatdist/cli/verify.hpp"
#include "heatdist/uniqueness.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace heatdist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double v);

nlohmann::json to_json(const CheckResult& r);
nlohmann::json to_json(const uniqueness::ProbeReport& r);

// Entry point shared by main() and the tests.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heatdist::cli
