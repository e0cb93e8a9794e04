#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace vwl::acceptance {

struct Check {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct Report {
    std::vector<Check> checks;
    // Reported but not counted towards the verdict.
    std::vector<Check> supplementary;

    bool all_pass() const;
};

struct Options {
    bool supplementary = true;
    // Criterion ids to run; empty runs all of them.
    std::set<int> only;
    // Progress lines as each check finishes.
    std::ostream* progress = nullptr;
};

Report run_all(const Options& opts = {});

std::string format_line(const Check& c);
std::string format_table(const Report& r);

}  // namespace vwl::acceptance
