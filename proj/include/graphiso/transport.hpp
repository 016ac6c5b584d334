// transport.hpp -- transport patterns between measures, the pairing bound,
// the Laplacian-inversion pattern on a vertex subset, Foelner radii with
// the eps0/r0 crossing, and the two-part harmonic-difference pipeline.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "graphiso/finite_graph.hpp"
#include "graphiso/lazy_graph.hpp"
#include "graphiso/operators.hpp"

namespace graphiso {

// Finitely supported signed measure on the vertices of a host graph. Kept
// host-free: vertices are indices into whatever graph the caller pairs it
// with. Exact zeros are dropped.
class Measure {
public:
    Measure() = default;

    void add(Vertex v, double mass);
    double value(Vertex v) const;
    double total() const;  // signed sum
    double mass() const;   // l1 norm
    const std::map<Vertex, double>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    static Measure dirac(Vertex v, double mass = 1.0);
    // All nonzero values of f, as a measure.
    static Measure from_function(const VertexFunction& f);

    friend Measure operator+(Measure a, const Measure& b);
    friend Measure operator-(Measure a, const Measure& b);

private:
    std::map<Vertex, double> entries_;
};

// pi = pi_plus - pi_minus with both parts positive and of equal l1 mass.
// Rejects measures whose total exceeds tol * mass.
std::pair<Measure, Measure> split_measure(const Measure& pi, double tol = 1e-9);

// An edge flow tau with divergence(tau) = target - source. Construct
// through make_pattern, which verifies the identity.
struct TransportPattern {
    EdgeFunction tau;
    Measure source;  // xi
    Measure target;  // mu
};

// Verifies divergence(tau) = target - source pointwise to 1e-12 * scale
// (scale = max involved magnitude); throws std::logic_error otherwise.
TransportPattern make_pattern(EdgeFunction tau, Measure source, Measure target);

struct PairingBound {
    double exact_diff = 0.0;        // <f, mu - xi>
    double gradient_pairing = 0.0;  // <grad f, tau>
    double bound = 0.0;             // |grad f|_p * |tau|_{p'}
    bool holds = false;             // identity to 1e-9 and diff <= bound
};

// The pairing lemma: <f|mu> - <f|xi> = <grad f|tau> <= |grad f|_p |tau|_{p'}.
PairingBound pairing_bound(const VertexFunction& f, const TransportPattern& t, double p);

// Unit flow of the given mass along a path of pairwise-adjacent vertices;
// source/target are mass * (delta_start, delta_end). Rejects non-adjacent
// consecutive vertices.
TransportPattern path_pattern(const FiniteGraph& g, const std::vector<Vertex>& path,
                              double mass);

struct PotentialPattern {
    TransportPattern pattern;
    double residual = 0.0;         // |Delta h - g|_2 / |g|_2 after CG
    std::uint32_t iterations = 0;  // CG iterations
    double tau_norm = 0.0;         // |tau|_p
    double load_norm = 0.0;        // |g|_p
    double lambda_p = 0.0;         // variational lambda_p of F (upper bound)
    double norm_bound = 0.0;       // d * lambda_p(F)^{-1} * |g|_p
};

// Solves Delta_F h = load on the graph induced on F, where Delta_F is the
// divergence-form operator (1/d) div grad with ambient degree d, and sets
// tau = (1/d) grad h extended by zero. Then divergence(tau) = load exactly
// on F and 0 outside. Requires connected induced F and a zero-sum load
// supported on F. `load` uses host vertex ids.
PotentialPattern potential_pattern(const FiniteGraph& host, const VertexSubset& F,
                                   const Measure& load, double p, double ambient_degree);

struct FolnerRadiusResult {
    std::uint32_t r = 0;
    bool lemma_holds = false;  // 2 r |dF| >= d eps |F|, exact arithmetic
};

// Minimal r with |P^r 1_F|_inf <= 1 - eps, by exact rational iteration of
// the ambient walk on the window. Returns nullopt when no such r <= max_r
// exists (bipartite oscillation can keep the sup at 1 - o(1)). Throws
// std::invalid_argument when the boundary of F is empty or eps is outside
// (0,1); throws ResourceError when the answer would exceed the materialized
// margin of a truncated window.
std::optional<FolnerRadiusResult> folner_radius(const Window& w, const VertexSubset& F,
                                                double eps, std::uint32_t max_r = 256);

struct FolnerRecord {
    std::vector<double> eps_grid;                    // geometric grid, decreasing
    std::vector<std::optional<std::uint32_t>> r_of;  // r_F per grid point
    double eps0 = 0.0;       // certified: r_F(eps0) <= 1/sqrt(eps0)
    double eps_hi = 0.0;     // flanking value where the inequality flips
    std::uint32_t r0 = 0;    // r_F(eps0)
    bool monotone = true;    // r_F non-decreasing along the grid
    bool cube_bound_holds = false;  // r0^3 >= (d/2) |F| / |dF|
};

// Locates the crossing of eps -> r_F(eps) with eps -> 1/sqrt(eps) on a
// geometric grid 2^{-1}..2^{-40}, refined by bisection. The crossing is
// reported as the interval [eps0, eps_hi].
FolnerRecord eps0_r0(const Window& w, const VertexSubset& F, std::uint32_t max_r = 256);

enum class PipelineMode {
    Radial,  // r = inradius(F) - 1; needs balls of radius r inside F
    Folner,  // r = r0(F) - 1 from the eps0/r0 crossing
};

struct PipelineReport {
    PipelineMode mode = PipelineMode::Radial;
    std::uint32_t r_steps = 0;
    std::uint32_t r0 = 0;        // Folner mode only
    double eps0 = 0.0;           // Folner mode only
    double escaped_mass = 0.0;   // l1 mass of P^r(delta_v - delta_w) outside F
    double tau_in_norm = 0.0;    // |tau_in|_p
    double tau_out_norm = 0.0;   // |tau_out|_p
    double tau_total_norm = 0.0;
    double escaped_l1_cost = 0.0;    // |tau_out|_1
    double escaped_l1_budget = 0.0;  // (2 r0 + 1) / r0^2, Folner mode
    double g_norm = 0.0;             // |P^r(delta_v - delta_w)|_p
    double return_prob = 0.0;        // |P^r delta_w|_inf
    double g_bound = 0.0;            // 2 * return_prob^{1/q}
    double kappa1 = 0.0;             // of the induced graph on F
    bool kappa1_exact = false;       // exhaustive when |F| small, else heuristic
    double norm_bound = 0.0;         // 2 pbar d^3 kappa1^{-2} return_prob^{1/q}
    double norm_bound_q = 0.0;       // 2 q d^3 kappa1^{-2} return_prob^{1/q}
    bool norm_bound_holds = false;   // tau_total <= norm_bound
    double test_diff = 0.0;          // <f, mu - xi> for the supplied test f
    double test_bound = 0.0;         // |grad f|_q |tau|_p
};

struct HarmonicPipeline {
    TransportPattern pattern;  // from P^r delta_w to P^r delta_v
    PipelineReport report;
};

// End-to-end transport pattern for P^r (delta_v - delta_w) on a window:
// the mass left inside F goes through potential_pattern, escaped mass is
// routed back into F along shortest paths (compensating mass is thereby
// drawn from inside F at the entry points). Requires p >= 2 and adjacent
// v, w; Radial mode requires balls of radius r around both inside F.
HarmonicPipeline harmonic_difference_pipeline(const Window& w, const VertexSubset& F,
                                              Vertex v, Vertex w_vertex, double p,
                                              PipelineMode mode,
                                              const VertexFunction* test_f = nullptr);

}  // namespace graphiso
