// Acceptance matrix runner. Prints the detail lines of each requested
// criterion followed by one summary line per criterion; exits nonzero when
// anything failed.

#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "d2dmotif/validation.hpp"

using namespace d2dmotif;

namespace {

bool report(const char* label, const std::vector<CheckResult>& checks) {
    bool ok = !checks.empty();
    for (const auto& c : checks) {
        std::cout << format_check(c) << '\n';
        ok = ok && c.pass;
    }
    std::cout << label << ": " << (ok ? "PASS" : "FAIL") << std::endl;
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> criteria;
    bool empirical_z = false;
    ValidationOptions o;
    app.add_option("--criterion", criteria, "criterion number (repeatable; default all)")->check(CLI::Range(1, 10));
    app.add_flag("--empirical-z", empirical_z, "empirical Z-scores against the analytic ones");
    app.add_option("--seed", o.seed, "master random seed");
    app.add_option("--trials", o.trials, "simulation trials (0 keeps the defaults)");
    CLI11_PARSE(app, argc, argv);

    if (criteria.empty() && !empirical_z)
        for (int id = 1; id <= kCriterionCount; ++id) criteria.push_back(id);

    std::vector<bool> results;
    try {
        for (int id : criteria) {
            const std::string label = "criterion " + std::to_string(id);
            results.push_back(report(label.c_str(), run_criterion(id, o)));
        }
        if (empirical_z) results.push_back(report("empirical z", run_empirical_z_check(o)));
    } catch (const std::exception& e) {
        std::cout << "error: " << e.what() << '\n';
        return 1;
    }
    if (criteria.size() > 1) {
        std::cout << "\nsummary\n";
        for (std::size_t i = 0; i < criteria.size(); ++i)
            std::cout << "criterion " << criteria[i] << ": " << (results[i] ? "PASS" : "FAIL") << '\n';
    }
    for (bool r : results)
        if (!r) return 1;
    return 0;
}
