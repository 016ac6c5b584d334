#include "doctest.h"

#include <stdexcept>

#include "graphiso/family.hpp"

using namespace graphiso;

TEST_CASE("cycle, path, complete") {
    auto c = make_cycle(12);
    CHECK(c.vertex_count() == 12);
    CHECK(c.edge_count() == 12);
    CHECK(c.is_regular());
    CHECK(c.common_degree() == 2);

    auto p = make_path(9);
    CHECK(p.vertex_count() == 9);
    CHECK(p.edge_count() == 8);
    CHECK(!p.is_regular());

    auto k = make_complete(5);
    CHECK(k.edge_count() == 10);
    CHECK(k.common_degree() == 4);
}

TEST_CASE("hypercube") {
    auto q = make_hypercube(4);
    CHECK(q.vertex_count() == 16);
    CHECK(q.edge_count() == 32);
    CHECK(q.common_degree() == 4);
    CHECK(q.is_connected());
    // antipodal vertices are not adjacent
    CHECK(!q.has_edge(0, 15));
}

TEST_CASE("grid box") {
    auto g = make_grid_box({4, 4});
    CHECK(g.vertex_count() == 16);
    CHECK(g.edge_count() == 24);
    CHECK(g.max_degree() == 4);
    auto g3 = make_grid_box({3, 3, 3});
    CHECK(g3.vertex_count() == 27);
    CHECK(g3.edge_count() == 54);
}

TEST_CASE("petersen") {
    auto g = make_petersen();
    CHECK(g.vertex_count() == 10);
    CHECK(g.edge_count() == 15);
    CHECK(g.common_degree() == 3);
    CHECK(g.is_connected());
    // girth 5: no triangles or 4-cycles through vertex 0
    for (Vertex u : g.neighbors(0))
        for (Vertex v : g.neighbors(0))
            if (u != v) CHECK(!g.has_edge(u, v));
}

TEST_CASE("random regular is deterministic, simple and connected") {
    auto a = make_random_regular(50, 4, 7);
    auto b = make_random_regular(50, 4, 7);
    CHECK(a.edge_count() == b.edge_count());
    for (std::uint32_t e = 0; e < a.edge_count(); ++e)
        CHECK(a.edge_endpoints(e) == b.edge_endpoints(e));
    CHECK(a.is_regular());
    CHECK(a.common_degree() == 4);
    CHECK(a.is_connected());
    a.validate();
    CHECK_THROWS_AS(make_random_regular(5, 3, 1), std::invalid_argument);  // odd n*d
}

TEST_CASE("tree-ray structure") {
    auto tr = tree_ray_graph(4, 5);
    // 2^5 - 1 tree vertices + 5 ray vertices
    CHECK(tr.graph.vertex_count() == 36);
    CHECK(tr.graph.edge_count() == 35);  // a tree
    CHECK(tr.graph.is_connected());
    CHECK(tr.graph.degree(tr.root) == 3);  // two children + ray
    REQUIRE(tr.subtree_sets.size() == 4);
    for (std::uint32_t m = 1; m <= 4; ++m) {
        const auto& set = tr.subtree_sets[m - 1];
        CHECK(set.size() == (std::size_t{1} << m) - 1);
        // exactly one boundary edge
        VertexSubset F(tr.graph, set);
        CHECK(edge_boundary_size(F) == 1);
    }
}

TEST_CASE("family descriptor parsing") {
    CHECK(generate_family("cycle:12").vertex_count() == 12);
    CHECK(generate_family("hypercube:3").vertex_count() == 8);
    CHECK(generate_family("grid:4x4").edge_count() == 24);
    CHECK(generate_family("petersen").vertex_count() == 10);
    CHECK(generate_family("random-regular:n=20,d=3,seed=5").common_degree() == 3);
    CHECK(generate_family("tree-ray:3x4").vertex_count() == 19);
    CHECK_THROWS_AS(generate_family("dodo:3"), std::invalid_argument);
}
