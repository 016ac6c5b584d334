// isoperimetry.hpp -- isoperimetric profiles, geometry of vertex sets,
// radial isoperimetry checks and the lamplighter counterexample pipeline.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphiso/finite_graph.hpp"
#include "graphiso/lazy_graph.hpp"

namespace graphiso {

struct ProfileEntry {
    std::uint64_t size = 0;
    std::uint64_t boundary = 0;   // min |dF| over |F| = size
    double ratio = 0.0;           // boundary / size
    VertexSubset witness;
    bool exact = false;
};

struct Profile {
    std::vector<ProfileEntry> entries;  // indexed by size - 1
    // Non-increasing envelope G_down(x) = min_{y <= x} G(y) over the covered
    // range, as ratios.
    std::vector<double> envelope;
};

// Exact profile over 1 <= |F| <= |V|/2 by exhaustive sweep (|V| <= 24).
Profile profile_exact(const FiniteGraph& g, std::uint32_t max_vertices = 20);

// Profile restricted to small sizes on larger graphs: exhaustive over
// connected subsets up to max_size, combined over components for
// disconnected subsets. Entries are labeled non-exact.
Profile profile_small_sets(const FiniteGraph& g, std::uint32_t max_size);

struct OptimalSets {
    std::vector<std::uint64_t> sizes;  // sizes where G(x) meets the envelope
    // Disjoint-doubling check: for each reported optimal size x with
    // 2x covered, G_down(2x) <= G(x). Holds when the graph hosts two
    // disjoint optimal copies; reported, not asserted.
    bool doubling_consistent = true;
    std::vector<std::uint64_t> doubling_violations;
};

OptimalSets optimal_sets(const Profile& profile);

struct GeometryReport {
    std::uint64_t size = 0;
    std::uint64_t boundary = 0;
    std::uint32_t inradius = 0;       // max over F of d(x, complement) - 1
    double mean_dist_boundary = 0.0;  // mean over F of d(x, complement)
    std::uint32_t diameter = 0;       // of the induced subgraph
    bool induced_connected = false;
};

// Geometry of F inside its host graph. d(x, complement) is computed by
// multi-source BFS from the outside endpoints of boundary edges; vertices
// of F adjacent to the complement have distance 1.
GeometryReport set_geometry(const FiniteGraph& g, const VertexSubset& F);

struct GrowthTable {
    std::vector<std::uint64_t> ball_sizes;     // f_V(r) = |B_r|, r = 0..radius
    std::vector<std::uint64_t> sphere_sizes;   // f_v(r) = |B_r| - |B_{r-1}|
};

// Volume growth of a lazy graph around a center.
GrowthTable volume_growth(const LazyGraph& g, const std::string& center,
                          std::uint32_t radius, std::uint64_t budget_vertices);

struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    bool applicable = true;
};

// Geometry lemma checks for a set F with the host's volume growth table:
//   |dF| >= 1 whenever F is a proper nonempty subset (trivial floor)
//   |F| <= f_V(inrad(F)) |dF|   (volume lemma)
//   diam(F) <= 3 k log|F| / (kappa1(F) log 2) for connected F with
//     diam >= 3, k = max degree of the induced graph (kappa1_induced > 0)
//   inrad(F) <= mean_dist_boundary(F)  (reported; can fail on elongated sets)
// Checks whose hypotheses are not met are marked not applicable.
std::vector<BoundCheck> geometry_bound_checks(const GeometryReport& geo,
                                              const GrowthTable& growth,
                                              std::optional<double> kappa1_induced,
                                              std::uint32_t induced_max_degree);

struct RadialCheck {
    double constant_K = 0.0;
    double exponent_k = 0.0;
    double ratio = 0.0;  // K |dA| (1 + inrad(A))^k / |A|
    bool holds = false;  // ratio >= 1
};

// Radial isoperimetry |A| <= K |dA| (1 + inrad(A))^k evaluated on one set.
RadialCheck radial_check(const GeometryReport& geo, double K, double k);

enum class ProfileClass { StrongIsoperimetry, Radial, Degenerate };

struct ProfileFit {
    ProfileClass cls = ProfileClass::Degenerate;
    double c_strong = 0.0;      // best c with G_down(x) >= c on the range
    double radial_K = 0.0;      // fitted K in G_down(x) ~ 1/(K x^{1/k}) fails
    double radial_k = 0.0;      // fitted exponent from log-log least squares
    double rss = 0.0;           // residual of the log-log fit
};

// Classifies a profile envelope: bounded below by a constant (strong
// isoperimetry), power-law decay (radial regime), or neither.
ProfileFit classify_profile(const Profile& profile);

// ----- lamplighter counterexample (Foelner sets of small inner radius) ----

struct CounterexampleReport {
    std::uint32_t n = 0, j = 0;
    std::uint64_t fn_size = 0;          // |F_n| = n 2^n
    std::uint64_t fn_boundary = 0;      // |dF_n| = 2^{n+1}
    std::uint64_t translates = 0;       // (n/j) 2^{n-j} tiles of F_j
    std::uint64_t tree_edges = 0;       // covering-tree edges realized
    std::uint64_t removed = 0;          // |X|: vertices on realized paths
    std::uint64_t max_path_len = 0;     // longest realized path (vertices)
    std::uint64_t fnj_size = 0;         // |F_{n;j}| = |F_n| - |X|
    std::uint64_t fnj_boundary = 0;
    std::uint32_t fnj_inradius = 0;
    bool complement_connected = false;  // F_{n;j}^c connected through X
    std::uint32_t translate_diameter = 0;  // diameter of one tile, <= 4j
    double size_ratio = 0.0;      // |F_{n;j}| / |F_n|
    double boundary_ratio = 0.0;  // |dF_{n;j}| / 2^n
    double isoperimetric_ratio = 0.0;  // |dF_{n;j}| / |F_{n;j}|
};

struct Counterexample {
    Counterexample() = default;
    // Rebind fnj to the relocated window graph on move/copy.
    Counterexample(Counterexample&& o) noexcept { *this = std::move(o); }
    Counterexample& operator=(Counterexample&& o) noexcept {
        window = std::move(o.window);
        fnj = std::move(o.fnj);
        fnj.rehost(window.graph);
        report = o.report;
        return *this;
    }
    Counterexample(const Counterexample& o) { *this = o; }
    Counterexample& operator=(const Counterexample& o) {
        if (this == &o) return *this;
        window = o.window;
        fnj = o.fnj;
        fnj.rehost(window.graph);
        report = o.report;
        return *this;
    }

    Window window;          // F_n with margin 1
    VertexSubset fnj;       // F_{n;j} inside the window
    CounterexampleReport report;
};

// Builds F_{n;j}: F_n minus a connected family X of paths realizing a
// covering tree of a paving of F_n by translates of F_j. Requires j | n,
// n >= 2 j. Verifies:
//   every realized path has at most 8 j + 1 vertices,
//   |F_{n;j}| >= n 2^n (1 - 9 * 2^{-j}),
//   |dF_{n;j}| <= 2^n (2 + 27 n 2^{-j}),
//   inrad(F_{n;j}) <= 4 j,
//   the complement of F_{n;j} is connected.
Counterexample counterexample_build(std::uint32_t n, std::uint32_t j,
                                    std::uint64_t budget_vertices);

}  // namespace graphiso
