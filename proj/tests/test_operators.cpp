#include "doctest.h"

#include <stdexcept>

#include <random>

#include "graphiso/family.hpp"
#include "graphiso/operators.hpp"

using namespace graphiso;

TEST_CASE("gradient on C4") {
    auto g = make_cycle(4);
    VertexFunction f(g, {0.0, 1.0, 2.0, 1.0});
    auto t = gradient(f);
    // along the cycle 0->1->2->3->0 the gradient reads (1, 1, -1, -1)
    CHECK(t.value(0, 1) == 1.0);
    CHECK(t.value(1, 2) == 1.0);
    CHECK(t.value(2, 3) == -1.0);
    CHECK(t.value(3, 0) == -1.0);
    // antisymmetry of the oriented view
    CHECK(t.value(1, 0) == -1.0);
}

TEST_CASE("walk laplacian of a delta on K4") {
    auto g = make_complete(4);
    VertexFunction f(g);
    f[1] = 1.0;
    auto walk = laplacian_apply(f, LaplacianConvention::Walk);
    CHECK(walk[1] == doctest::Approx(1.0));
    for (Vertex v : {0u, 2u, 3u}) CHECK(walk[v] == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("divergence convention is d times walk convention on Q3") {
    auto g = make_hypercube(3);
    std::mt19937_64 rng(42);
    std::normal_distribution<double> gauss;
    VertexFunction f(g);
    for (Vertex v = 0; v < g.vertex_count(); ++v) f[v] = gauss(rng);
    auto walk = laplacian_apply(f, LaplacianConvention::Walk);
    auto divg = laplacian_apply(f, LaplacianConvention::Divergence);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        CHECK(divg[v] == doctest::Approx(3.0 * walk[v]).epsilon(1e-12));
}

TEST_CASE("divergence is adjoint to the gradient") {
    auto g = make_petersen();
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    VertexFunction f(g);
    for (Vertex v = 0; v < g.vertex_count(); ++v) f[v] = gauss(rng);
    EdgeFunction t(g);
    for (std::uint32_t e = 0; e < g.edge_count(); ++e) t[e] = gauss(rng);
    const double a = pairing(gradient(f), t);
    const double b = pairing(f, divergence(t));
    CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("zero-sum projection") {
    auto g = make_cycle(5);
    VertexFunction f(g, {1.0, 2.0, 3.0, 4.0, 5.0});
    f.project_zero_sum();
    CHECK(std::abs(f.sum()) < 1e-12);
    CHECK(f[0] == doctest::Approx(-2.0));
}

TEST_CASE("lp norms and conjugate exponents") {
    std::vector<double> v{3.0, -4.0};
    CHECK(lp_norm(v, 1.0) == doctest::Approx(7.0));
    CHECK(lp_norm(v, 2.0) == doctest::Approx(5.0));
    CHECK(lp_norm(v, kInfinity) == doctest::Approx(4.0));
    CHECK(lp_norm(v, 3.0) == doctest::Approx(std::pow(27.0 + 64.0, 1.0 / 3.0)));
    CHECK_THROWS_AS(lp_norm(v, 0.5), std::invalid_argument);

    CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0));
    CHECK(conjugate_exponent(1.5) == doctest::Approx(3.0));
    CHECK(conjugate_exponent(1.0) == kInfinity);
    CHECK(conjugate_exponent(kInfinity) == 1.0);
    // p-norm is monotone decreasing in p
    CHECK(lp_norm(v, 1.5) > lp_norm(v, 2.5));
}

TEST_CASE("plus gradient is the symmetric edge sum") {
    auto g = make_path(3);
    VertexFunction phi(g, {1.0, 2.0, 4.0});
    auto s = plus_gradient(phi);
    CHECK(s[g.edge_id(0, 1)] == doctest::Approx(3.0));
    CHECK(s[g.edge_id(1, 2)] == doctest::Approx(6.0));
}

TEST_CASE("edge function oriented accessors") {
    auto g = make_cycle(4);
    EdgeFunction t(g);
    t.set(2, 1, 5.0);
    CHECK(t.value(2, 1) == 5.0);
    CHECK(t.value(1, 2) == -5.0);
    t.add(1, 2, 1.0);
    CHECK(t.value(1, 2) == -4.0);
}

TEST_CASE("non-finite vertex values are rejected") {
    auto g = make_cycle(4);
    CHECK_THROWS_AS(VertexFunction(g, {1.0, 2.0, std::nan(""), 0.0}), std::invalid_argument);
}
