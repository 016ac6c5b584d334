#include "doctest.h"

#include <stdexcept>

#include <set>

#include "graphiso/family.hpp"
#include "graphiso/lazy_graph.hpp"

using namespace graphiso;

TEST_CASE("lamplighter codec round trip and canonicity") {
    LampState s;
    s.lamps = {-3, 0, 7};
    s.pos = 2;
    auto label = LamplighterLazy::encode(s);
    auto back = LamplighterLazy::decode(label);
    CHECK(back.lamps == s.lamps);
    CHECK(back.pos == s.pos);
    LampState bad;
    bad.lamps = {5, 5};
    CHECK_THROWS_AS(LamplighterLazy::encode(bad), std::invalid_argument);
}

TEST_CASE("lamplighter neighbors: switch or walk") {
    LamplighterLazy g;
    auto origin = LamplighterLazy::encode(LampState{});
    auto nbrs = g.neighbors(origin);
    REQUIRE(nbrs.size() == 3);
    std::set<std::pair<std::vector<std::int32_t>, std::int32_t>> seen;
    for (const auto& l : nbrs) {
        auto s = LamplighterLazy::decode(l);
        seen.insert({s.lamps, s.pos});
    }
    CHECK(seen.count({{0}, 0}) == 1);   // switch
    CHECK(seen.count({{}, -1}) == 1);   // walk left
    CHECK(seen.count({{}, 1}) == 1);    // walk right
    // symmetry: each neighbor lists the origin back
    for (const auto& l : nbrs) {
        auto back = g.neighbors(l);
        CHECK(std::count(back.begin(), back.end(), origin) == 1);
    }
}

TEST_CASE("packed codec matches the label codec") {
    LampState s;
    s.lamps = {-55, 0, 56};
    s.pos = -17;
    auto key = LamplighterLazy::pack(s);
    REQUIRE(key.has_value());
    auto back = LamplighterLazy::unpack(*key);
    CHECK(back.lamps == s.lamps);
    CHECK(back.pos == s.pos);
    LampState out;
    out.lamps = {57};
    CHECK(!LamplighterLazy::pack(out).has_value());

    // packed neighbors agree with label neighbors inside the window
    LamplighterLazy g;
    std::array<Key128, 3> pn;
    int count = 0, lost = 0;
    LamplighterLazy::packed_neighbors(*LamplighterLazy::pack(LampState{}), pn, count, lost);
    CHECK(count == 3);
    CHECK(lost == 0);
    std::set<std::string> a, b;
    for (int i = 0; i < count; ++i) a.insert(LamplighterLazy::encode(LamplighterLazy::unpack(pn[i])));
    for (const auto& l : g.neighbors(LamplighterLazy::encode(LampState{}))) b.insert(l);
    CHECK(a == b);
}

TEST_CASE("materialize_ball on the lamplighter") {
    LamplighterLazy g;
    auto w = materialize_ball(g, LamplighterLazy::encode(LampState{}), 4, 1000);
    // ball layer sizes around the identity
    REQUIRE(w.layer_sizes.size() == 6);
    CHECK(w.layer_sizes[0] == 1);
    CHECK(w.layer_sizes[1] == 3);
    CHECK(w.layer_sizes[2] == 6);
    CHECK(w.layer_sizes[3] == 12);
    CHECK(w.layer_sizes[4] == 22);
    CHECK(w.core.size() == 1 + 3 + 6 + 12 + 22);
    // every core vertex has full degree 3 in the window
    for (Vertex v : w.core.members()) CHECK(w.graph.degree(v) == 3);
    // label round trip through the window index
    for (Vertex v = 0; v < w.graph.vertex_count(); ++v)
        CHECK(w.index_of(w.label_of(v)) == static_cast<std::int64_t>(v));
    // collar depth: distance-4 layer vertices are adjacent to truncation
    auto depth = w.collar_depth();
    for (Vertex v : w.core.members()) CHECK(depth[v] >= 1);
}

TEST_CASE("materialize_ball respects the vertex budget") {
    LamplighterLazy g;
    CHECK_THROWS_AS(materialize_ball(g, LamplighterLazy::encode(LampState{}), 10, 50),
                    ResourceError);
}

TEST_CASE("line and grid lazy graphs") {
    LineLazy line;
    auto nbrs = line.neighbors(LineLazy::encode(5));
    REQUIRE(nbrs.size() == 2);
    std::set<std::int64_t> got;
    for (auto& l : nbrs) got.insert(LineLazy::decode(l));
    CHECK(got == std::set<std::int64_t>{4, 6});

    GridLazy grid(2);
    auto w = materialize_ball(grid, grid.encode({0, 0}), 2, 1000);
    CHECK(w.core.size() == 13);  // l1 ball of radius 2 in Z^2

    auto fin = make_cycle(6);
    WrappedFinite wf(fin);
    auto ball = materialize_ball(wf, WrappedFinite::encode(0), 3, 100);
    CHECK(ball.graph.vertex_count() == 6);
}

TEST_CASE("lamplighter window geometry") {
    auto w = lamplighter_window(3, 1, 1 << 20);
    // box: lamps in [1,3], z in [0,4]
    CHECK(w.graph.vertex_count() == 5 * 8);
    CHECK(w.core.size() == 3 * 8);  // |F_3| = 3 * 2^3
    CHECK(edge_boundary_size(w.core) == 2 * 8);  // |dF_n| = 2^{n+1}
    for (Vertex v : w.core.members()) {
        CHECK(w.graph.degree(v) == 3);
        CHECK(w.ambient_degree(v) == 3);
    }
    // window indices round trip through labels
    for (Vertex v = 0; v < w.graph.vertex_count(); ++v)
        CHECK(w.index_of(w.label_of(v)) == static_cast<std::int64_t>(v));
    // core membership agrees with the defining box
    for (Vertex v = 0; v < w.graph.vertex_count(); ++v) {
        auto s = LamplighterLazy::decode(w.label_of(v));
        const bool inside = s.pos >= 1 && s.pos <= 3;
        CHECK(w.core.contains(v) == inside);
    }
}

TEST_CASE("window adjacency matches the lazy graph on the core") {
    auto w = lamplighter_window(4, 2, 1 << 20);
    LamplighterLazy g;
    for (Vertex v : w.core.members()) {
        auto lazy_nbrs = g.neighbors(w.label_of(v));
        std::set<std::int64_t> expect;
        for (auto& l : lazy_nbrs) expect.insert(w.index_of(l));
        std::set<std::int64_t> got;
        for (Vertex u : w.graph.neighbors(v)) got.insert(u);
        CHECK(expect == got);
    }
}

TEST_CASE("ambient walk preserves mass away from the collar") {
    auto w = lamplighter_window(3, 3, 1 << 20);
    auto depth = w.collar_depth();
    std::vector<double> f(w.graph.vertex_count(), 0.0);
    const std::int64_t start = w.index_of(LamplighterLazy::encode(LampState{{2}, 1}));
    REQUIRE(start >= 0);
    REQUIRE(depth[start] >= 3);
    f[start] = 1.0;
    double mass = 1.0;
    for (int step = 0; step < 2; ++step) {
        f = ambient_walk_step(w, f);
        mass = 0.0;
        for (double x : f) mass += x;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    }
}
