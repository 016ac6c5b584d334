#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "graphiso/family.hpp"
#include "graphiso/walks.hpp"

using namespace graphiso;

TEST_CASE("walk distribution basics") {
    LamplighterLazy lamp;
    const std::string origin = LamplighterLazy::encode(LampState{});

    auto d0 = walk_distribution(lamp, origin, 0);
    CHECK(d0.table.size() == 1);
    CHECK(d0.value(origin) == 1.0);
    CHECK(d0.loss == 0.0);

    auto d1 = walk_distribution(lamp, origin, 1);
    CHECK(d1.table.size() == 3);
    CHECK(d1.value(LamplighterLazy::encode(LampState{{0}, 0})) == doctest::Approx(1.0 / 3));
    CHECK(d1.value(LamplighterLazy::encode(LampState{{}, 1})) == doctest::Approx(1.0 / 3));
    CHECK(d1.value(LamplighterLazy::encode(LampState{{}, -1})) == doctest::Approx(1.0 / 3));
    CHECK(d1.total() == doctest::Approx(1.0).epsilon(1e-14));

    auto c4 = make_cycle(4);
    WrappedFinite wrap(c4);
    auto d2 = walk_distribution(wrap, WrappedFinite::encode(0), 2);
    CHECK(d2.value(WrappedFinite::encode(0)) == doctest::Approx(0.5));
    CHECK(d2.value(WrappedFinite::encode(2)) == doctest::Approx(0.5));
    CHECK(d2.value(WrappedFinite::encode(1)) == 0.0);
}

TEST_CASE("mass conservation with pruning is tracked, not silent") {
    LamplighterLazy lamp;
    WalkConfig cfg;
    cfg.prune_below = 1e-4;
    cfg.loss_tolerance = 1e-6;
    auto d = walk_distribution(lamp, LamplighterLazy::encode(LampState{}), 12, cfg);
    CHECK(d.loss > 0.0);
    CHECK(d.degraded);
    CHECK(d.total() + d.loss == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("return probability series") {
    auto c4 = make_cycle(4);
    WrappedFinite wrap(c4);
    auto rs = return_probability(wrap, WrappedFinite::encode(0), 8);
    CHECK(rs.rho[0] == 1.0);
    CHECK(rs.rho[1] == 0.0);
    CHECK(rs.rho[2] == doctest::Approx(0.5));
    CHECK(rs.has_odd_zeros);
    CHECK(!rs.degraded);
    // rho_{2k} >= rho_k^2 on a transitive graph
    for (std::size_t k = 1; 2 * k < rs.rho.size(); ++k)
        CHECK(rs.rho[2 * k] >= rs.rho[k] * rs.rho[k] - 1e-12);

    LamplighterLazy lamp;
    auto ls = return_probability(lamp, LamplighterLazy::encode(LampState{}), 16);
    CHECK(ls.rho[0] == 1.0);
    CHECK(ls.has_odd_zeros);  // switch-or-walk generators are bipartite
    for (std::size_t k = 2; 2 * k < ls.rho.size(); k += 2)
        CHECK(ls.rho[2 * k] >= ls.rho[k] * ls.rho[k] - 1e-12);
    CHECK(ls.rho[2] == doctest::Approx(1.0 / 3.0));  // 3 of 9 two-step paths return
}

TEST_CASE("fit_gamma recovers synthetic generators") {
    std::vector<double> rho(201, 0.0);
    for (std::uint32_t k = 0; k <= 200; ++k)
        rho[k] = std::exp(-std::sqrt(static_cast<double>(k)));
    auto fit = fit_gamma(rho, 4, 200);
    CHECK(fit.gamma == doctest::Approx(0.5).epsilon(0.02));
    CHECK(fit.K1 == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fit.residual < 1e-4);

    for (std::uint32_t k = 0; k <= 200; ++k)
        rho[k] = 0.9 * std::exp(-2.0 * std::cbrt(static_cast<double>(k)));
    fit = fit_gamma(rho, 4, 200);
    CHECK(fit.gamma == doctest::Approx(1.0 / 3.0).epsilon(0.06));
    CHECK(fit.K2 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("fit_gamma is scale equivariant and parity aware") {
    std::vector<double> rho(101, 0.0), scaled(101, 0.0);
    for (std::uint32_t k = 0; k <= 100; ++k) {
        rho[k] = std::exp(-std::pow(static_cast<double>(k), 0.4));
        scaled[k] = 17.0 * rho[k];
    }
    auto f1 = fit_gamma(rho, 5, 100);
    auto f2 = fit_gamma(scaled, 5, 100);
    CHECK(f1.gamma == doctest::Approx(f2.gamma).epsilon(1e-6));
    CHECK(f2.K1 == doctest::Approx(17.0 * f1.K1).epsilon(1e-6));

    // zero odd entries restrict the fit to even k
    std::vector<double> bip(101, 0.0);
    for (std::uint32_t k = 0; k <= 100; k += 2)
        bip[k] = std::exp(-std::sqrt(static_cast<double>(k)));
    auto fb = fit_gamma(bip, 4, 100);
    for (const auto& [k, r] : fb.used) CHECK(k % 2 == 0);
    CHECK(fb.gamma == doctest::Approx(0.5).epsilon(0.02));

    CHECK_THROWS_AS(fit_gamma(rho, 90, 300), std::invalid_argument);
    std::vector<double> neg{1.0, 0.5, -0.1, 0.2, 0.1, 0.05};
    CHECK_THROWS_AS(fit_gamma(neg, 1, 5), std::invalid_argument);
}

TEST_CASE("c0 witness family") {
    LineLazy line;
    auto w0 = witness_c0(line, LineLazy::encode(0), 0, 1000);
    CHECK(w0.root_value == 1.0);
    CHECK(w0.sup_gradient <= 1.0);

    LamplighterLazy lamp;
    auto w5 = witness_c0(lamp, LamplighterLazy::encode(LampState{}), 5, 1 << 20);
    CHECK(w5.root_value == 1.0);
    CHECK(w5.sup_gradient <= 1.0 / 6.0 + 1e-15);
    CHECK(w5.sup_gradient == doctest::Approx(1.0 / 6.0));  // adjacent layers differ
    // plateau never exceeds 1
    for (double x : w5.f) CHECK(x <= 1.0);
}

TEST_CASE("l1 witness family") {
    LineLazy line;
    auto w0 = witness_l1(line, LineLazy::encode(0), 0);
    CHECK(w0.l1_norm == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(w0.laplacian_l1 == doctest::Approx(2.0));  // delta - P delta
    CHECK(w0.laplacian_l1 <= w0.bound + 1e-12);

    LamplighterLazy lamp;
    auto w20 = witness_l1(lamp, LamplighterLazy::encode(LampState{}), 20);
    CHECK(w20.l1_norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w20.loss == 0.0);  // exact iteration, no pruning
    CHECK(w20.laplacian_l1 <= 2.0 / 21.0 + 1e-12);
    CHECK(w20.laplacian_l1_upper == doctest::Approx(w20.laplacian_l1));
    CHECK(w20.laplacian_l1_identity == doctest::Approx(w20.laplacian_l1).epsilon(1e-12));
    CHECK(w20.laplacian_l1_identity <= w20.bound + 1e-15);
    CHECK(w20.rho_next == 0.0);  // step 21 is odd and the walk is bipartite
    CHECK(w20.support > 1000);
}
