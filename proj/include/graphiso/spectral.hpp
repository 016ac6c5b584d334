// spectral.hpp -- exact and variational spectral constants: lambda_2,
// Cheeger constant kappa_1, lp-conductance kappa_p, lp-spectral gap
// lambda_p, and the inequality chain connecting them.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphiso/finite_graph.hpp"
#include "graphiso/operators.hpp"

namespace graphiso {

// First nonzero eigenvalue of Delta = I - P. Exact dense solve for regular
// graphs; non-regular graphs use the similar symmetric normalized Laplacian
// (same spectrum). Requires a connected graph.
double lambda2_exact(const FiniteGraph& g);

// lambda_2 of the divergence-form operator (1/d) div grad on g, where d is
// an ambient degree (g need not be regular; kernel = constants). Dense up
// to `dense_limit` vertices, inverse power iteration with CG beyond.
double lambda2_divergence(const FiniteGraph& g, double ambient_degree,
                          std::uint32_t dense_limit = 2048);

struct CheegerResult {
    double value = 0.0;           // |boundary| / |F|
    std::uint64_t boundary = 0;   // exact numerator
    std::uint64_t set_size = 0;   // exact denominator
    VertexSubset witness;
    bool exact = false;
};

// Exhaustive Cheeger constant min |dF|/|F| over nonempty F with
// |F| <= |V|/2, by a Gray-code sweep. Requires |V| <= max_vertices
// (default 20, hard cap 26). Deterministic tie-break: smaller |F|, then
// lexicographically smallest bitset.
CheegerResult cheeger_exact(const FiniteGraph& g, std::uint32_t max_vertices = 20);

// Upper bound: sweep cuts of the divergence-form Fiedler vector followed
// by greedy single-vertex moves. Deterministic.
CheegerResult cheeger_heuristic(const FiniteGraph& g);

struct VariationalResult {
    double value = 0.0;       // best quotient found (upper bound)
    std::vector<double> witness;
    double p = 2.0;
    std::uint32_t restarts = 0;
    std::uint32_t iterations = 0;  // total across restarts
};

// Upper bound on kappa_p = min ||grad f||_p / ||f||_p over nonzero
// zero-sum f, by projected gradient descent with seeded restarts.
VariationalResult kappa_p_estimate(const FiniteGraph& g, double p,
                                   std::uint32_t restarts = 32, std::uint64_t seed = 1);

// Upper bound on lambda_p = min ||Delta f||_p / ||f||_p (Delta = I - P)
// over nonzero zero-sum f.
VariationalResult lambda_p_estimate(const FiniteGraph& g, double p,
                                    std::uint32_t restarts = 32, std::uint64_t seed = 1);

// lambda_p of the divergence-form operator (1/d) div grad with an ambient
// degree (used for windows, where the induced graph is not regular).
VariationalResult lambda_p_divergence_estimate(const FiniteGraph& g, double p,
                                               double ambient_degree,
                                               std::uint32_t restarts = 32,
                                               std::uint64_t seed = 1);

struct GridBracket {
    double lower = 0.0;  // certified lower bound
    double upper = 0.0;  // best grid value (an upper bound)
};

// Certified bracket for kappa_p or lambda_p on graphs with |V| <= 4 by a
// Lipschitz grid sweep over the zero-sum unit sphere.
GridBracket grid_oracle_kappa(const FiniteGraph& g, double p, std::uint32_t grid = 4000);
GridBracket grid_oracle_lambda(const FiniteGraph& g, double p, std::uint32_t grid = 4000);

struct ChainItem {
    std::string name;
    double lhs = 0.0;  // value that should dominate
    double rhs = 0.0;
    double slack = 0.0;  // (lhs - rhs) / max(|lhs|, |rhs|, 1)
    bool holds = false;
};

struct ChainReport {
    double p = 2.0;
    std::uint32_t degree = 0;
    double lambda2 = 0.0;
    double kappa1 = 0.0;
    double kappa_p = 0.0;   // variational upper bound
    double lambda_p = 0.0;  // variational upper bound
    std::vector<ChainItem> items;
    bool all_hold = false;
};

// Verifies the inequality chain between kappa_1, kappa_p, lambda_p and
// lambda_2 on a connected regular graph:
//   2^{p-1} kappa_1 >= kappa_p^p
//   kappa_2^2 = d lambda_2            (equality, checked to tolerance)
//   max{2,p} d^{(p-1)/p} kappa_p >= 2^{(p-1)/p} kappa_1
//   kappa_p >= (d^{1/p}/2) lambda_p
//   pbar lambda_p >= 2 lambda_2, pbar = max{p, p/(p-1)}
//   lambda_p >= 1 - (1 - lambda_2)^{2/pbar}   (when lambda_2 <= 1)
//   lambda_p >= kappa_1^2 / (d^2 pbar)
//   4 d kappa_1 >= 2 d^2 lambda_2 >= kappa_1^2   (Cheeger)
// One-sided soundness: upper bounds are used only on the dominated side,
// exact quantities elsewhere; see each item's name. Throws on non-regular
// or disconnected input.
ChainReport verify_chain(const FiniteGraph& g, double p,
                         std::uint32_t restarts = 32, std::uint64_t seed = 1,
                         double tol = 1e-6);

}  // namespace graphiso
