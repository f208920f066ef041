#pragma once

#include <string>

#include "json.hpp"
#include "regval/scenario.hpp"

namespace regval {

struct RunOptions {
    // include the quotient-by-t1 consistency check (slow on large charts)
    bool deep_checks = true;
};

struct RunResult {
    nlohmann::ordered_json report;
    int unknown = 0;
    int errors = 0;
    int failed_checks = 0;
};

RunResult run_scenario(const Scenario& s, const RunOptions& opt);
std::string render_text(const nlohmann::ordered_json& report);

}  // namespace regval
