#include "regval/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "regval/errors.hpp"

namespace regval {

namespace {

const std::vector<std::string> kAnalyses = {"classify", "wdim", "cotangent", "grade", "fibres", "gldim_bound"};

std::vector<std::string> strings(const nlohmann::json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) return {};
    const auto& a = j.at(key);
    if (!a.is_array()) throw InvalidScenario(where + ": '" + key + "' must be a list of strings");
    std::vector<std::string> out;
    for (const auto& x : a) {
        if (!x.is_string()) throw InvalidScenario(where + ": '" + key + "' must be a list of strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

std::string string_field(const nlohmann::json& j, const std::string& key, const std::string& where,
                         const std::string& fallback) {
    if (!j.contains(key)) {
        if (fallback.empty()) throw InvalidScenario(where + ": missing '" + key + "'");
        return fallback;
    }
    if (!j.at(key).is_string()) throw InvalidScenario(where + ": '" + key + "' must be a string");
    return j.at(key).get<std::string>();
}

ScenarioChart chart_from_json(const nlohmann::json& algebra, const nlohmann::json& points, std::string name) {
    if (!algebra.is_object()) throw InvalidScenario("'algebra' must be an object");
    ScenarioChart c;
    c.name = std::move(name);
    c.vars = strings(algebra, "vars", "algebra");
    c.relations = strings(algebra, "relations", "algebra");
    if (c.vars.empty()) throw InvalidScenario("algebra of " + c.name + " has no variables");
    if (!points.is_array()) throw InvalidScenario("'points' must be a list");
    for (const auto& p : points) {
        if (!p.is_object()) throw InvalidScenario("each point must be an object");
        ScenarioPoint sp;
        sp.name = string_field(p, "name", "point", "");
        sp.base_prime = string_field(p, "base_prime", "point " + sp.name, "");
        sp.generators = strings(p, "generators", "point " + sp.name);
        c.points.push_back(std::move(sp));
    }
    return c;
}

void validate(const Scenario& s) {
    ValuationRing V = s.make_base();
    std::set<std::string> chart_names, point_names;
    for (const auto& c : s.charts) {
        if (!chart_names.insert(c.name).second) throw InvalidScenario("duplicate chart name " + c.name);
        for (const auto& p : c.points) {
            if (!point_names.insert(p.name).second) throw InvalidScenario("duplicate point name " + p.name);
            try {
                V.prime_by_name(p.base_prime);
            } catch (const InvalidValuation&) {
                throw InvalidScenario("point " + p.name + " refers to unknown base prime " + p.base_prime);
            }
        }
    }
    for (const auto& a : s.analyses)
        if (std::find(kAnalyses.begin(), kAnalyses.end(), a) == kAnalyses.end())
            throw InvalidScenario("unknown analysis " + a);
}

}  // namespace

bool Scenario::wants(const std::string& analysis) const {
    return analyses.empty() || std::find(analyses.begin(), analyses.end(), analysis) != analyses.end();
}

Field Scenario::make_field() const {
    if (field == "QQ" || field == "Q") return Field::rationals();
    if (field.size() > 4 && field.rfind("GF(", 0) == 0 && field.back() == ')') {
        try {
            return Field::prime(std::stoll(field.substr(3, field.size() - 4)));
        } catch (const std::logic_error&) {
        }
    }
    throw InvalidScenario("unknown field " + field);
}

ValuationRing Scenario::make_base() const {
    if (params.empty()) throw InvalidScenario("valuation ring needs at least one parameter");
    Field k = make_field();
    if (valuation == "zn_lex") return ValuationRing::zn_lex(k, params);
    if (valuation == "dense_sqrt2") {
        if (params.size() != 2) throw InvalidScenario("dense_sqrt2 needs exactly two parameters");
        return ValuationRing::dense_sqrt2(k, params);
    }
    throw InvalidScenario("unknown valuation kind " + valuation);
}

Scenario scenario_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidScenario("scenario must be a JSON object");
    Scenario s;
    s.name = string_field(j, "name", "scenario", "scenario");
    s.description = j.contains("description") ? string_field(j, "description", "scenario", "") : "";
    s.field = string_field(j, "field", "scenario", "QQ");
    if (!j.contains("valuation") || !j.at("valuation").is_object()) throw InvalidScenario("missing 'valuation' object");
    const auto& v = j.at("valuation");
    s.valuation = string_field(v, "kind", "valuation", "zn_lex");
    s.params = strings(v, "params", "valuation");
    if (j.contains("charts")) {
        if (!j.at("charts").is_array()) throw InvalidScenario("'charts' must be a list");
        std::size_t k = 0;
        for (const auto& c : j.at("charts")) {
            if (!c.is_object() || !c.contains("algebra")) throw InvalidScenario("each chart needs an 'algebra'");
            std::string name = c.contains("name") ? string_field(c, "name", "chart", "") : "chart" + std::to_string(++k);
            s.charts.push_back(chart_from_json(c.at("algebra"), c.value("points", nlohmann::json::array()), name));
        }
    } else if (j.contains("algebra")) {
        s.charts.push_back(chart_from_json(j.at("algebra"), j.value("points", nlohmann::json::array()), "main"));
    } else {
        throw InvalidScenario("scenario needs 'algebra' or 'charts'");
    }
    s.analyses = strings(j, "analyses", "scenario");
    if (std::find(s.analyses.begin(), s.analyses.end(), "all") != s.analyses.end()) s.analyses.clear();
    validate(s);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidScenario("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidScenario(path + ": " + e.what());
    }
    return scenario_from_json(j);
}

std::vector<std::pair<std::string, std::string>> list_builtins() {
    return {
        {"elliptic-rank2", "cubic sX^3 + tZ^3 - ZY^2 over a rank-2 valuation ring, three affine charts"},
        {"strange-T", "affine line over a rank-1 valuation ring with dense value group"},
        {"dense-affine-line", "affine line over the dense rank-1 ring at several points"},
    };
}

bool is_builtin(const std::string& name) {
    auto all = list_builtins();
    return std::any_of(all.begin(), all.end(), [&](const auto& p) { return p.first == name; });
}

Scenario builtin_scenario(const std::string& name) {
    Scenario s;
    s.name = name;
    for (const auto& [n, d] : list_builtins())
        if (n == name) s.description = d;
    if (name == "elliptic-rank2") {
        s.valuation = "zn_lex";
        s.params = {"s", "t"};
        s.charts = {
            {"X-chart", {"Y", "Z"}, {"s + t*Z^3 - Z*Y^2"}, {{"Q", "p", {"Y", "Z"}}, {"Q''", "N", {"Y", "Z"}}}},
            {"Z-chart", {"X", "Y"}, {"s*X^3 - Y^2 + t"}, {{"Q'", "N", {"X - 1", "Y"}}}},
            {"Y-chart", {"X", "Z"}, {"s*X^3 + t*Z^3 - Z"}, {{"G", "0", {"X", "Z"}}}},
        };
    } else if (name == "strange-T") {
        s.valuation = "dense_sqrt2";
        s.params = {"t", "u"};
        s.charts = {{"line", {"X"}, {}, {{"T", "N", {"X"}}}}};
    } else if (name == "dense-affine-line") {
        s.valuation = "dense_sqrt2";
        s.params = {"s", "t"};
        s.charts = {{"line", {"X"}, {}, {{"L0", "N", {"X"}}, {"L1", "N", {"X - 1"}}, {"G", "0", {"X"}}}}};
    } else {
        throw InvalidScenario("no builtin scenario named " + name);
    }
    validate(s);
    return s;
}

}  // namespace regval
