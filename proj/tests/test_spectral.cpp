#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "graphiso/family.hpp"
#include "graphiso/spectral.hpp"

using namespace graphiso;

TEST_CASE("lambda2 of standard families") {
    CHECK(lambda2_exact(make_complete(2)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(lambda2_exact(make_cycle(4)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lambda2_exact(make_cycle(6)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(lambda2_exact(make_cycle(12)) ==
          doctest::Approx(1.0 - std::cos(std::acos(-1.0) / 6.0)).epsilon(1e-12));
    CHECK(lambda2_exact(make_petersen()) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(lambda2_exact(make_hypercube(3)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(lambda2_exact(make_complete(5)) == doctest::Approx(5.0 / 4.0).epsilon(1e-12));
    CHECK_THROWS_AS(lambda2_exact(FiniteGraph::from_edges(4, {{0, 1}, {2, 3}})),
                    std::invalid_argument);
}

TEST_CASE("divergence-form lambda2 agrees on regular graphs") {
    auto g = make_petersen();
    const double dense = lambda2_divergence(g, 3.0);
    CHECK(dense == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    // force the iterative path
    const double sparse = lambda2_divergence(g, 3.0, 2);
    CHECK(sparse == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
    // iterative value is a Rayleigh quotient, never below the true lambda2
    CHECK(sparse >= 2.0 / 3.0 - 1e-12);
}

TEST_CASE("exhaustive cheeger constants") {
    auto c12 = make_cycle(12);
    auto c = cheeger_exact(c12);
    CHECK(c.boundary == 2);
    CHECK(c.set_size == 6);
    CHECK(c.value == doctest::Approx(1.0 / 3.0));
    CHECK(c.exact);
    CHECK(edge_boundary_size(c.witness) == 2);

    auto pet = make_petersen();
    auto p = cheeger_exact(pet);
    CHECK(p.boundary == 5);
    CHECK(p.set_size == 5);

    auto q4 = make_hypercube(4);
    auto q = cheeger_exact(q4);
    CHECK(q.value == doctest::Approx(1.0));
    CHECK(q.set_size == 8);

    auto k5 = make_complete(5);
    auto k = cheeger_exact(k5);
    CHECK(k.boundary == 6);
    CHECK(k.set_size == 2);

    auto q5 = make_hypercube(5);
    CHECK_THROWS_AS(cheeger_exact(q5), std::invalid_argument);
}

TEST_CASE("cheeger tie-break is deterministic") {
    auto g = make_cycle(8);
    auto a = cheeger_exact(g);
    auto b = cheeger_exact(g);
    CHECK(a.witness.members() == b.witness.members());
    // every half-arc achieves 2/4; the lex rule picks the one with vertex 0
    CHECK(a.witness.contains(0));
    CHECK(a.set_size == 4);
}

TEST_CASE("cheeger heuristic upper-bounds the constant") {
    for (const char* spec : {"cycle:12", "petersen", "hypercube:4", "complete:5",
                             "random-regular:n=16,d=3,seed=3"}) {
        auto g = generate_family(spec);
        auto ex = cheeger_exact(g, 16);
        auto hu = cheeger_heuristic(g);
        CHECK(hu.boundary * ex.set_size >= ex.boundary * hu.set_size);  // hu >= ex
        CHECK(edge_boundary_size(hu.witness) == hu.boundary);
    }
    // sweep cut is exact on the cycle
    auto hu = cheeger_heuristic(make_cycle(12));
    CHECK(hu.value == doctest::Approx(1.0 / 3.0));
}

// Frozen reference values from an independent optimizer run.
TEST_CASE("variational kappa_p and lambda_p against frozen references") {
    const double tol = 2e-6;
    auto c6 = make_cycle(6);
    CHECK(kappa_p_estimate(c6, 2.0).value == doctest::Approx(1.0).epsilon(tol));
    CHECK(kappa_p_estimate(c6, 3.0).value == doctest::Approx(0.9363433589620569).epsilon(tol));
    CHECK(lambda_p_estimate(c6, 3.0).value == doctest::Approx(0.4923076708818357).epsilon(tol));
    CHECK(lambda_p_estimate(c6, 5.0).value == doctest::Approx(0.4704017745320010).epsilon(tol));

    auto c4 = make_cycle(4);
    CHECK(kappa_p_estimate(c4, 5.0).value == doctest::Approx(std::pow(2.0, 0.2)).epsilon(tol));
    CHECK(kappa_p_estimate(c4, 2.0).value == doctest::Approx(std::sqrt(2.0)).epsilon(tol));
    CHECK(lambda_p_estimate(c4, 1.5).value == doctest::Approx(1.0).epsilon(tol));

    auto k2 = make_complete(2);
    for (double p : {1.5, 2.0, 3.0, 5.0}) {
        // kappa_p(K2) = 2^{1/p'}; lambda_p(K2) = 2 for every p
        CHECK(kappa_p_estimate(k2, p).value ==
              doctest::Approx(std::pow(2.0, 1.0 - 1.0 / p)).epsilon(tol));
        CHECK(lambda_p_estimate(k2, p).value == doctest::Approx(2.0).epsilon(tol));
    }

    auto pet = make_petersen();
    CHECK(kappa_p_estimate(pet, 2.0).value == doctest::Approx(std::sqrt(2.0)).epsilon(tol));
    CHECK(lambda_p_estimate(pet, 3.0).value ==
          doctest::Approx(0.6488218280985508).epsilon(1e-4));
    // kappa_2^2 = d lambda_2 on regular graphs
    auto q3 = make_hypercube(3);
    const double k2q = kappa_p_estimate(q3, 2.0).value;
    CHECK(k2q * k2q == doctest::Approx(3.0 * (2.0 / 3.0)).epsilon(1e-8));
}

TEST_CASE("grid oracle brackets the optimizer on tiny graphs") {
    for (double p : {1.5, 2.0, 3.0, 5.0}) {
        auto k2 = make_complete(2);
        auto gb = grid_oracle_kappa(k2, p);
        CHECK(gb.lower == doctest::Approx(std::pow(2.0, 1.0 - 1.0 / p)).epsilon(1e-12));
        CHECK(gb.upper == gb.lower);

        for (const char* spec : {"cycle:3", "path:4", "cycle:4", "complete:4"}) {
            auto g = generate_family(spec);
            auto kb = grid_oracle_kappa(g, p);
            auto est = kappa_p_estimate(g, p);
            CHECK(est.value >= kb.lower - 1e-12);
            CHECK(est.value <= kb.upper + 1e-6);
            auto lb = grid_oracle_lambda(g, p);
            auto lest = lambda_p_estimate(g, p);
            CHECK(lest.value >= lb.lower - 1e-12);
            CHECK(lest.value <= lb.upper + 1e-6);
        }
    }
}

TEST_CASE("inequality chain holds on regular families") {
    for (const char* spec : {"complete:2", "cycle:4", "cycle:6", "petersen", "hypercube:3"}) {
        auto g = generate_family(spec);
        for (double p : {1.5, 2.0, 3.0, 5.0}) {
            auto rep = verify_chain(g, p, 16, 1);
            INFO(spec, " p=", p);
            for (const auto& item : rep.items) {
                INFO(item.name, " lhs=", item.lhs, " rhs=", item.rhs, " slack=", item.slack);
                CHECK(item.holds);
            }
            CHECK(rep.all_hold);
        }
    }
}

TEST_CASE("chain rejects non-regular and disconnected graphs") {
    CHECK_THROWS_AS(verify_chain(make_path(5), 2.0), std::invalid_argument);
    CHECK_THROWS_AS(verify_chain(FiniteGraph::from_edges(4, {{0, 1}, {2, 3}}), 2.0),
                    std::invalid_argument);
}
