#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "regval/errors.hpp"
#include "regval/groebner.hpp"
#include "regval/report.hpp"

using namespace regval;

int main(int argc, char** argv) {
    CLI::App app{"regularity and weak dimension of points on algebras over valuation rings"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "analyze a scenario file or a builtin scenario");
    std::string target, json_out, checks = "all";
    std::size_t budget = spair_budget();
    bool quiet = false;
    analyze->add_option("scenario", target, "scenario JSON file or builtin name")->required();
    analyze->add_option("--json", json_out, "write the JSON report to this file ('-' for stdout)");
    analyze->add_option("--checks", checks, "invariant checks to run")->check(CLI::IsMember({"all", "fast"}));
    analyze->add_option("--spair-budget", budget, "maximum number of S-pairs per Groebner computation")
        ->check(CLI::PositiveNumber);
    analyze->add_flag("-q,--quiet", quiet, "suppress the text report");

    auto* list = app.add_subcommand("list", "list builtin scenarios");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        for (const auto& [name, desc] : list_builtins()) std::cout << name << "  " << desc << "\n";
        return 0;
    }

    try {
        set_spair_budget(budget);
        Scenario s = is_builtin(target) ? builtin_scenario(target) : load_scenario(target);
        RunResult res = run_scenario(s, RunOptions{checks == "all"});
        if (!quiet && json_out != "-") std::cout << render_text(res.report);
        if (json_out == "-") {
            std::cout << res.report.dump(2) << "\n";
        } else if (!json_out.empty()) {
            std::ofstream out(json_out);
            if (!out) throw InvalidScenario("cannot write " + json_out);
            out << res.report.dump(2) << "\n";
        }
        if (res.errors > 0 || res.failed_checks > 0) return 1;
        return res.unknown > 0 ? 2 : 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
