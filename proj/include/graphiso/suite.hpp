// suite.hpp -- the acceptance battery: one callable check per criterion,
// shared by the command-line tool and the acceptance test binary.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphiso/finite_graph.hpp"

namespace graphiso {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;     // one-line summary, includes failures if any
    double seconds = 0.0;
};

// Family descriptors of the small-graph suite: C4, C6, C8, K4, K5, Q3,
// Petersen and five seeded random regular graphs with at most 10 vertices.
const std::vector<std::string>& suite_graph_specs();

// Runs one criterion (1..10). Quick mode shrinks instance sizes so the
// whole battery stays in the small-graph regime and passes fast.
CriterionResult run_criterion(int id, bool quick = false,
                              std::uint64_t budget_vertices = std::uint64_t{1} << 26);

// Runs the listed criteria (all ten when `ids` is empty).
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, bool quick = false,
                                          std::uint64_t budget_vertices = std::uint64_t{1}
                                                                          << 26);

}  // namespace graphiso
