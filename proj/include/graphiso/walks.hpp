// walks.hpp -- long-horizon random-walk distributions on lazy graphs,
// return-probability series, stretched-exponential decay fitting, and the
// two witness families (c_0 gradient and l^1 Laplacian).
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "graphiso/lazy_graph.hpp"

namespace graphiso {

struct WalkConfig {
    std::uint64_t max_support = std::uint64_t{1} << 22;
    double prune_below = 0.0;     // entries below this go into the loss
    double loss_tolerance = 1e-6; // above it the result is flagged degraded
};

// P^k delta_x as a sparse label -> probability table. Mass that was pruned
// or walked out of the packable window is accounted in `loss`:
// total() + loss = 1 to 1e-12.
struct SparseDistribution {
    std::uint32_t k = 0;
    double loss = 0.0;
    bool degraded = false;  // loss exceeded the configured tolerance
    std::vector<std::pair<std::string, double>> table;  // sorted by label

    double total() const;
    double value(const std::string& label) const;
};

// Exact sparse-front expansion of P^k delta_x; a packed fast path is used
// for the lamplighter. Truncation (budget or pruning) is tracked, never
// silent.
SparseDistribution walk_distribution(const LazyGraph& g, const std::string& x,
                                     std::uint32_t k, const WalkConfig& cfg = {});

struct RhoSeries {
    std::vector<double> rho;   // rho[k] = (P^k delta_x)(x), k = 0..k_max
    std::vector<double> loss;  // truncation loss after k steps
    bool has_odd_zeros = false;  // bipartite parity: odd entries exactly 0
    bool degraded = false;       // tail entries are lower bounds only
};

RhoSeries return_probability(const LazyGraph& g, const std::string& x,
                             std::uint32_t k_max, const WalkConfig& cfg = {});

// Least-squares fit of rho_k ~ K1 exp(-K2 k^gamma) on [k_min, k_max]:
// log(-log(rho_k / K1)) regressed on log k with K1 profiled on a log grid.
struct DecayFit {
    std::uint32_t k_min = 0, k_max = 0;
    std::vector<std::pair<std::uint32_t, double>> used;  // (k, rho_k) fitted
    double gamma = 0.0;
    double K1 = 0.0;
    double K2 = 0.0;
    double residual = 0.0;  // mean squared residual in the regressed scale
};

// Zero entries inside the range restrict the fit to even k (bipartite
// parity); rejects ranges with fewer than three usable points.
DecayFit fit_gamma(const std::vector<double>& rho, std::uint32_t k_min,
                   std::uint32_t k_max);

// f_n = (1/(n+1)) sum_{i=0}^n 1_{B_i}: value 1 at the root, decreasing by
// 1/(n+1) per distance layer, 0 outside B_n. sup |grad f_n| <= 1/(n+1).
struct WitnessC0 {
    Window window;          // ball of radius n+1 around the root
    std::vector<double> f;  // per window vertex
    double root_value = 0.0;
    double sup_gradient = 0.0;
};

WitnessC0 witness_c0(const LazyGraph& g, const std::string& root, std::uint32_t n,
                     std::uint64_t budget_vertices);

// f_n = (1/(n+1)) sum_{i=0}^n P^i delta_x: |f_n|_1 = 1 and
// |(I-P) f_n|_1 = 2 (1 - rho_{n+1}) / (n+1) <= 2/(n+1).
struct WitnessL1 {
    double l1_norm = 0.0;             // computed |f_n|_1 (1 minus loss effects)
    double laplacian_l1 = 0.0;        // computed |(I-P) f_n|_1 over the support
    double laplacian_l1_upper = 0.0;  // rigorous upper: computed + 2 loss/(n+1)
    double rho_next = 0.0;            // computed rho_{n+1} (lower bound on it)
    // 2 (1 - rho_next) / (n+1): by mass conservation this upper-bounds the
    // true norm even under truncation, and is always <= bound.
    double laplacian_l1_identity = 0.0;
    double loss = 0.0;
    double bound = 0.0;               // 2/(n+1)
    std::uint64_t support = 0;        // support size of f_n
};

WitnessL1 witness_l1(const LazyGraph& g, const std::string& x, std::uint32_t n,
                     const WalkConfig& cfg = {});

}  // namespace graphiso
