#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "regval/algebra.hpp"

namespace regval {

struct ScenarioPoint {
    std::string name;
    std::string base_prime;
    std::vector<std::string> generators;
};

// one affine chart: variables, relations and the points analyzed on it
struct ScenarioChart {
    std::string name;
    std::vector<std::string> vars;
    std::vector<std::string> relations;
    std::vector<ScenarioPoint> points;
};

struct Scenario {
    std::string name;
    std::string description;
    std::string field = "QQ";
    // "zn_lex" or "dense_sqrt2"
    std::string valuation = "zn_lex";
    std::vector<std::string> params;
    std::vector<ScenarioChart> charts;
    // classify, wdim, cotangent, grade, fibres, gldim_bound
    std::vector<std::string> analyses;

    bool wants(const std::string& analysis) const;
    Field make_field() const;
    ValuationRing make_base() const;
};

// Accepts a single chart ("algebra" + "points") or a list under "charts".
// Throws InvalidScenario on missing or inconsistent fields.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

// name and one-line description, in a fixed order
std::vector<std::pair<std::string, std::string>> list_builtins();
bool is_builtin(const std::string& name);
Scenario builtin_scenario(const std::string& name);

}  // namespace regval
