// Acceptance battery runner: one pass/fail line per criterion. With no
// arguments all ten criteria run; otherwise the listed ids. Exit status is
// the number of failed criteria.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "graphiso/suite.hpp"

int main(int argc, char** argv) {
    std::vector<int> ids;
    bool quick = false;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--quick") {
            quick = true;
            continue;
        }
        const int id = std::atoi(arg.c_str());
        if (id < 1 || id > 10) {
            std::fprintf(stderr, "usage: acceptance [--quick] [criterion ids in 1..10]\n");
            return 64;
        }
        ids.push_back(id);
    }

    const auto results = graphiso::run_criteria(ids, quick);
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] criterion %d: %s (%.1fs) -- %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    }
    return failures;
}
