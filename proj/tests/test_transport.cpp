#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "graphiso/family.hpp"
#include "graphiso/lazy_graph.hpp"
#include "graphiso/transport.hpp"

using namespace graphiso;

namespace {

// Keeps the lazy wrapper alive alongside the window that references it.
struct WrappedWindow {
    WrappedFinite lazy;
    Window window;
    WrappedWindow(const FiniteGraph& g, Vertex center, std::uint32_t radius)
        : lazy(g),
          window(materialize_ball(lazy, WrappedFinite::encode(center), radius, 1 << 20)) {}
};

}  // namespace

TEST_CASE("split_measure decomposes signed measures") {
    Measure pi = Measure::dirac(0, 1.0) - Measure::dirac(3, 1.0);
    auto [plus, minus] = split_measure(pi);
    CHECK(plus.value(0) == 1.0);
    CHECK(minus.value(3) == 1.0);
    CHECK(plus.mass() == minus.mass());

    Measure zero;
    auto [zp, zm] = split_measure(zero);
    CHECK(zp.empty());
    CHECK(zm.empty());

    CHECK_THROWS_AS(split_measure(Measure::dirac(1, 0.5)), std::invalid_argument);
}

TEST_CASE("divergence of a random edge function splits into equal masses") {
    auto g = make_petersen();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    EdgeFunction t(g);
    for (std::uint32_t e = 0; e < g.edge_count(); ++e) t[e] = unif(rng);
    Measure pi = Measure::from_function(divergence(t));
    auto [plus, minus] = split_measure(pi, 1e-12);
    CHECK(plus.mass() == doctest::Approx(minus.mass()).epsilon(1e-12));
    CHECK((plus - minus - pi).mass() == doctest::Approx(0.0));
}

TEST_CASE("pairing bound lemma") {
    auto g = make_path(5);

    // constant f pairs to zero against balanced measures
    auto t = path_pattern(g, {0, 1, 2, 3, 4}, 1.0);
    VertexFunction c(g, 3.5);
    auto pb = pairing_bound(c, t, 2.0);
    CHECK(pb.exact_diff == doctest::Approx(0.0));
    CHECK(pb.holds);

    // coordinate function telescopes along the path
    VertexFunction f(g);
    for (Vertex v = 0; v < 5; ++v) f[v] = static_cast<double>(v);
    pb = pairing_bound(f, t, 2.0);
    CHECK(pb.exact_diff == doctest::Approx(4.0));  // f(4) - f(0)
    CHECK(pb.gradient_pairing == doctest::Approx(4.0));
    CHECK(pb.holds);

    // random f and tau on Q3: identity and bound
    auto q3 = make_hypercube(3);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    EdgeFunction tau(q3);
    for (std::uint32_t e = 0; e < q3.edge_count(); ++e) tau[e] = unif(rng);
    auto [plus, minus] = split_measure(Measure::from_function(divergence(tau)), 1e-12);
    auto pat = make_pattern(tau, minus, plus);
    VertexFunction rf(q3);
    for (Vertex v = 0; v < 8; ++v) rf[v] = unif(rng);
    pb = pairing_bound(rf, pat, 3.0);
    CHECK(pb.holds);
    CHECK(std::abs(pb.exact_diff - pb.gradient_pairing) < 1e-12);
}

TEST_CASE("path patterns and their norms") {
    auto g = make_path(6);
    auto t1 = path_pattern(g, {2, 3}, 1.0);
    for (double p : {1.0, 2.0, 5.0}) CHECK(lp_norm(t1.tau, p) == doctest::Approx(1.0));

    auto t4 = path_pattern(g, {0, 1, 2, 3, 4}, 1.0);
    CHECK(lp_norm(t4.tau, 2.0) == doctest::Approx(2.0));  // 4^{1/2}
    CHECK(lp_norm(t4.tau, 1.0) == doctest::Approx(4.0));

    auto c6 = make_cycle(6);
    auto loop = path_pattern(c6, {0, 1, 2, 3, 4, 5, 0}, 1.0);
    VertexFunction div = divergence(loop.tau);
    for (Vertex v = 0; v < 6; ++v) CHECK(div[v] == doctest::Approx(0.0));

    CHECK_THROWS_AS(path_pattern(g, {0, 2}, 1.0), std::invalid_argument);
}

TEST_CASE("path pattern concatenation is additive") {
    auto g = make_path(7);
    std::vector<Vertex> whole{0, 1, 2, 3, 4, 5, 6};
    auto tw = path_pattern(g, whole, 0.75);
    auto ta = path_pattern(g, {0, 1, 2, 3}, 0.75);
    auto tb = path_pattern(g, {3, 4, 5, 6}, 0.75);
    for (std::uint32_t e = 0; e < g.edge_count(); ++e)
        CHECK(tw.tau[e] == doctest::Approx(ta.tau[e] + tb.tau[e]));
    CHECK(std::pow(lp_norm(tw.tau, 3.0), 3.0) ==
          doctest::Approx(std::pow(lp_norm(ta.tau, 3.0), 3.0) +
                          std::pow(lp_norm(tb.tau, 3.0), 3.0)));
}

TEST_CASE("potential pattern on a 3-path matches the unit flow") {
    auto g = make_path(3);
    VertexSubset F(g, {0, 1, 2});
    Measure load = Measure::dirac(0, 1.0) - Measure::dirac(2, 1.0);
    auto pp = potential_pattern(g, F, load, 2.0, 2.0);
    // transports unit mass from vertex 2 to vertex 0
    auto ref = path_pattern(g, {2, 1, 0}, 1.0);
    for (std::uint32_t e = 0; e < g.edge_count(); ++e)
        CHECK(pp.pattern.tau[e] == doctest::Approx(ref.tau[e]).epsilon(1e-10));
    CHECK(pp.residual < 1e-10);

    // zero load gives the zero pattern
    auto zp = potential_pattern(g, F, Measure{}, 2.0, 2.0);
    CHECK(zp.tau_norm == 0.0);
}

TEST_CASE("potential pattern satisfies the lambda_p norm bound") {
    auto c6 = make_cycle(6);
    VertexSubset F(c6, {0, 1, 2, 3, 4, 5});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (double p : {2.0, 3.0}) {
        std::vector<double> vals(6);
        double mean = 0.0;
        for (double& x : vals) mean += (x = unif(rng));
        mean /= 6.0;
        Measure load;
        for (Vertex v = 0; v < 6; ++v) load.add(v, vals[v] - mean);
        auto pp = potential_pattern(c6, F, load, p, 2.0);
        CHECK(pp.residual < 1e-10);
        CHECK(pp.tau_norm <= pp.norm_bound * (1.0 + 1e-6));
    }
}

TEST_CASE("potential pattern on a proper subset stays inside it") {
    auto c8 = make_cycle(8);
    VertexSubset F(c8, {0, 1, 2, 3, 4});
    Measure load = Measure::dirac(1, 1.0) - Measure::dirac(3, 1.0);
    auto pp = potential_pattern(c8, F, load, 2.0, 2.0);
    // boundary and outside edges carry no flow
    CHECK(pp.pattern.tau.value(4, 5) == doctest::Approx(0.0));
    CHECK(pp.pattern.tau.value(6, 7) == doctest::Approx(0.0));
    VertexFunction div = divergence(pp.pattern.tau);
    CHECK(div[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(div[3] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(div[6] == doctest::Approx(0.0));

    VertexSubset split(c8, {0, 1, 4, 5});
    CHECK_THROWS_AS(potential_pattern(c8, split, Measure{}, 2.0, 2.0),
                    std::invalid_argument);
}

TEST_CASE("folner radius on a wrapped cycle") {
    auto c6 = make_cycle(6);
    WrappedWindow ww(c6, 0, 6);
    Window& w = ww.window;
    REQUIRE(w.graph.vertex_count() == 6);

    const Vertex v0 = static_cast<Vertex>(w.index_of(WrappedFinite::encode(0)));
    VertexSubset F(w.graph, {v0});
    auto res = folner_radius(w, F, 0.4);
    REQUIRE(res.has_value());
    CHECK(res->r == 1);  // one step spreads the mass to 1/2
    CHECK(res->lemma_holds);

    // whole graph: no boundary, mass never leaves
    VertexSubset full = F.complement();
    for (Vertex v = 0; v < 6; ++v) full.insert(v);
    CHECK_THROWS_AS(folner_radius(w, full, 0.4), std::invalid_argument);

    CHECK_THROWS_AS(folner_radius(w, F, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(folner_radius(w, F, 1.0), std::invalid_argument);
}

TEST_CASE("folner radius can fail to exist on bipartite oscillation") {
    auto c4 = make_cycle(4);
    WrappedWindow ww(c4, 0, 4);
    Window& w = ww.window;
    std::vector<Vertex> evens;
    for (Vertex v = 0; v < 4; ++v)
        if (WrappedFinite::decode(w.label_of(v)) % 2 == 0) evens.push_back(v);
    VertexSubset F(w.graph, evens);
    CHECK(!folner_radius(w, F, 0.5, 64).has_value());
}

TEST_CASE("folner radius on the lamplighter F_3") {
    auto w = lamplighter_window(3, 6, 1 << 20);
    auto res = folner_radius(w, w.core, 0.5, 64);
    REQUIRE(res.has_value());
    // lemma bound: (3/2) * 0.5 * 24 / 16 = 1.125, so r >= 2; exact value 6
    CHECK(res->r == 6);
    CHECK(res->lemma_holds);
}

TEST_CASE("eps0/r0 crossing for a single vertex in C6") {
    auto c6 = make_cycle(6);
    WrappedWindow ww(c6, 0, 6);
    Window& w = ww.window;
    const Vertex v0 = static_cast<Vertex>(w.index_of(WrappedFinite::encode(0)));
    VertexSubset F(w.graph, {v0});
    auto rec = eps0_r0(w, F);
    CHECK(rec.r0 == 1);
    CHECK(rec.eps0 == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(rec.eps_hi >= rec.eps0);
    CHECK(rec.monotone);
    CHECK(rec.r0 * std::sqrt(rec.eps0) <= 1.0 + 1e-9);
    CHECK(rec.cube_bound_holds);
}

TEST_CASE("radial pipeline on a cycle arc") {
    auto c20 = make_cycle(20);
    WrappedWindow ww(c20, 0, 20);
    Window& w = ww.window;
    std::vector<Vertex> arc;
    for (Vertex h = 0; h < 15; ++h)
        arc.push_back(static_cast<Vertex>(w.index_of(WrappedFinite::encode(h))));
    VertexSubset F(w.graph, arc);
    const Vertex v = arc[7], wv = arc[8];

    VertexFunction f(w.graph);
    for (Vertex x = 0; x < 20; ++x)
        f[x] = std::cos(2.0 * std::acos(-1.0) *
                        static_cast<double>(WrappedFinite::decode(w.label_of(x))) / 20.0);

    auto hp = harmonic_difference_pipeline(w, F, v, wv, 2.0, PipelineMode::Radial, &f);
    const auto& rep = hp.report;
    CHECK(rep.r_steps == 6);  // inradius 7
    CHECK(rep.escaped_mass == 0.0);
    CHECK(rep.tau_out_norm == 0.0);
    CHECK(rep.kappa1_exact);  // induced path of 15 vertices
    CHECK(rep.tau_total_norm > 0.0);
    CHECK(rep.g_norm <= rep.g_bound + 1e-9);
    CHECK(rep.norm_bound_holds);
    CHECK(rep.norm_bound >= rep.norm_bound_q - 1e-12);  // p >= q here
    CHECK(std::abs(rep.test_diff) <= rep.test_bound + 1e-9);

    // endpoints too shallow for the ball precondition
    CHECK_THROWS_AS(
        harmonic_difference_pipeline(w, F, arc[0], arc[1], 2.0, PipelineMode::Radial),
        std::invalid_argument);
}

TEST_CASE("folner pipeline transports escaped mass along short paths") {
    auto c20 = make_cycle(20);
    WrappedWindow ww(c20, 0, 20);
    Window& w = ww.window;
    std::vector<Vertex> arc;
    for (Vertex h = 0; h < 10; ++h)
        arc.push_back(static_cast<Vertex>(w.index_of(WrappedFinite::encode(h))));
    VertexSubset F(w.graph, arc);

    auto hp = harmonic_difference_pipeline(w, F, arc[4], arc[5], 3.0, PipelineMode::Folner);
    const auto& rep = hp.report;
    CHECK(rep.r0 >= 1);
    CHECK(rep.r_steps == rep.r0 - 1);
    CHECK(rep.eps0 > 0.0);
    // every escaped path has length <= r_steps <= 2 r0 + 1
    CHECK(rep.escaped_l1_cost <=
          rep.escaped_mass * (2.0 * rep.r0 + 1.0) + 1e-12);
    // the pattern glues: divergence was verified at construction
    CHECK(rep.tau_total_norm <= rep.tau_in_norm + rep.tau_out_norm + 1e-12);
    auto pb = pairing_bound(VertexFunction(w.graph, 1.0), hp.pattern, 1.5);
    CHECK(pb.exact_diff == doctest::Approx(0.0));
}

TEST_CASE("radial pipeline norm decreases along lamplighter windows") {
    double prev = -1.0;
    for (std::uint32_t n : {4u, 6u}) {
        auto w = lamplighter_window(n, 1, 1 << 22);
        LampState s;
        s.pos = static_cast<std::int32_t>(n / 2);
        const Vertex v = static_cast<Vertex>(w.index_of(LamplighterLazy::encode(s)));
        s.pos = static_cast<std::int32_t>(n / 2 + 1);
        const Vertex wv = static_cast<Vertex>(w.index_of(LamplighterLazy::encode(s)));
        auto hp = harmonic_difference_pipeline(w, w.core, v, wv, 2.0, PipelineMode::Radial);
        CHECK(hp.report.escaped_mass == 0.0);
        if (prev >= 0.0) CHECK(hp.report.tau_total_norm < prev);
        prev = hp.report.tau_total_norm;
    }
}
