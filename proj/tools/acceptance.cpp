#include "vwl/acceptance.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <iostream>

int main() {
    if (const char* v = std::getenv("VWL_THREADS"))
        if (const int n = std::atoi(v); n > 0) omp_set_num_threads(n);

    vwl::acceptance::Options opts;
    opts.progress = &std::cout;
    const auto rep = vwl::acceptance::run_all(opts);
    const auto passed = std::count_if(rep.checks.begin(), rep.checks.end(), [](const auto& c) { return c.pass; });
    std::cout << passed << "/" << rep.checks.size() << " criteria pass\n";
    return rep.all_pass() ? 0 : 1;
}
