// family.hpp -- deterministic generators for the test-suite graph families.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphiso/finite_graph.hpp"

namespace graphiso {

FiniteGraph make_cycle(std::uint32_t n);
FiniteGraph make_path(std::uint32_t n);
FiniteGraph make_complete(std::uint32_t n);
FiniteGraph make_hypercube(std::uint32_t dim);
// Axis-aligned box in Z^d with the given side lengths (grid graph).
FiniteGraph make_grid_box(const std::vector<std::uint32_t>& sides);
FiniteGraph make_petersen();
// Connected random d-regular graph via the pairing model; deterministic
// given the seed. Rejects n*d odd or d >= n.
FiniteGraph make_random_regular(std::uint32_t n, std::uint32_t d, std::uint64_t seed);

// Parses family descriptors such as "cycle:12", "complete:5", "hypercube:4",
// "path:9", "petersen", "grid:4x4", "random-regular:n=50,d=4,seed=7".
// "lamplighter-window:n" is handled by the caller (it yields a Window).
FiniteGraph generate_family(const std::string& spec);

// Complete binary tree of the given depth (root at depth 0, leaves at
// depth `depth`) whose root is attached to one end of a path of
// `ray_length` extra vertices. For each m in [1, depth] the set of a
// depth-(depth-m+1) vertex together with all its descendants has
// 2^m - 1 vertices and a single boundary edge.
struct TreeRayGraph {
    FiniteGraph graph;
    Vertex root;                          // tree root (ray attaches here)
    std::vector<std::vector<Vertex>> subtree_sets;  // index m-1 -> T_m members
};
TreeRayGraph tree_ray_graph(std::uint32_t depth, std::uint32_t ray_length);

}  // namespace graphiso
