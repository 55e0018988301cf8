#pragma once

// Registry of verification checks, one per acceptance criterion. Each check
// compares computed quantities against independent oracles and reports the
// worst case at top level with every comparison listed in cases.

#include "heatdist/primitives.hpp"

#include <string>
#include <vector>

namespace heatdist::cli {

enum class Relation {
    Equal,      // |lhs - rhs| <= tolerance
    AtMost,     // lhs <= rhs + tolerance
    AtLeast,    // lhs >= rhs - tolerance
    Less,       // lhs < rhs
};

struct CheckCase {
    std::string label;
    Relation relation = Relation::Equal;
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct CheckResult {
    std::string check;
    std::string title;
    ParamMap params;
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::vector<CheckCase> cases;
    std::string note;
};

struct CheckInfo {
    std::string id;
    std::string title;
    ParamMap defaults;
};

const std::vector<CheckInfo>& registered_checks();

// Runs one check with defaults overridden by params. Throws InvalidArgument
// for unknown ids or parameters.
CheckResult run_check(const std::string& id, const ParamMap& params = {});

std::string relation_symbol(Relation r);

}  // namespace heatdist::cli
