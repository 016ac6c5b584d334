// finite_graph.hpp -- immutable simple undirected graphs in CSR form,
// vertex subsets, edge sets, boundaries and induced subgraphs.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace graphiso {

using Vertex = std::uint32_t;

// Immutable symmetric adjacency over vertices 0..n-1.
// Neighbor lists are sorted; no self-loops, no duplicate entries.
// Each unordered edge {u,v} (u < v) carries an edge id in [0, edge_count).
class FiniteGraph {
public:
    FiniteGraph() = default;

    // Builds from an unordered edge list (pairs may appear in any
    // orientation, once each). Throws std::invalid_argument on self-loops,
    // duplicates or out-of-range endpoints.
    static FiniteGraph from_edges(Vertex vertex_count,
                                  const std::vector<std::pair<Vertex, Vertex>>& edges);

    Vertex vertex_count() const { return n_; }
    std::uint64_t edge_count() const { return m_; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    // Edge ids aligned with neighbors(v).
    std::span<const std::uint32_t> incident_edge_ids(Vertex v) const {
        return {edge_ids_.data() + offsets_[v], edge_ids_.data() + offsets_[v + 1]};
    }
    std::uint32_t degree(Vertex v) const {
        return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    }

    bool is_regular() const { return regular_; }
    // Common degree; only meaningful when is_regular().
    std::uint32_t common_degree() const { return common_degree_; }
    std::uint32_t max_degree() const { return max_degree_; }

    // Endpoints of edge id e, with lower index first.
    std::pair<Vertex, Vertex> edge_endpoints(std::uint32_t e) const {
        return {edge_u_[e], edge_v_[e]};
    }

    bool has_edge(Vertex u, Vertex v) const;
    // Edge id of {u,v}; throws if absent.
    std::uint32_t edge_id(Vertex u, Vertex v) const;

    bool is_connected() const;

    // Re-checks symmetry, sortedness, degree table and loop/duplicate
    // freedom; throws std::logic_error on violation.
    void validate() const;

    // Text format: first line "n m", then m lines "u v" with u < v.
    static FiniteGraph load(std::istream& in);
    void save(std::ostream& out) const;

private:
    Vertex n_ = 0;
    std::uint64_t m_ = 0;
    std::vector<std::uint64_t> offsets_;
    std::vector<Vertex> adj_;
    std::vector<std::uint32_t> edge_ids_;
    std::vector<Vertex> edge_u_, edge_v_;
    bool regular_ = false;
    std::uint32_t common_degree_ = 0;
    std::uint32_t max_degree_ = 0;
};

// Bitset-backed subset of the vertices of a host graph.
class VertexSubset {
public:
    VertexSubset() = default;
    explicit VertexSubset(const FiniteGraph& host);
    VertexSubset(const FiniteGraph& host, const std::vector<Vertex>& members);

    const FiniteGraph& host() const { return *host_; }
    // Re-point the subset at an equal graph that lives elsewhere (after the
    // original host object was moved). The bitset is kept as is.
    void rehost(const FiniteGraph& host) { host_ = &host; }
    bool contains(Vertex v) const { return (bits_[v >> 6] >> (v & 63)) & 1u; }
    void insert(Vertex v) {
        if (!contains(v)) { bits_[v >> 6] |= std::uint64_t{1} << (v & 63); ++count_; }
    }
    void erase(Vertex v) {
        if (contains(v)) { bits_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); --count_; }
    }
    std::uint64_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    std::vector<Vertex> members() const;
    VertexSubset complement() const;

    // Lexicographic comparison of the bitsets (vertex 0 most significant),
    // used for deterministic tie-breaking.
    bool lex_less(const VertexSubset& other) const;

    const std::vector<std::uint64_t>& words() const { return bits_; }

private:
    const FiniteGraph* host_ = nullptr;
    std::vector<std::uint64_t> bits_;
    std::uint64_t count_ = 0;
};

// A set of unordered edges of a host graph, stored as edge ids.
class EdgeSet {
public:
    EdgeSet() = default;
    EdgeSet(const FiniteGraph& host, std::vector<std::uint32_t> ids);

    const FiniteGraph& host() const { return *host_; }
    const std::vector<std::uint32_t>& ids() const { return ids_; }
    std::uint64_t size() const { return ids_.size(); }

private:
    const FiniteGraph* host_ = nullptr;
    std::vector<std::uint32_t> ids_;  // sorted
};

// Edge boundary: unordered edges with exactly one endpoint in F.
EdgeSet edge_boundary(const VertexSubset& F);
// Boundary size without materializing the EdgeSet.
std::uint64_t edge_boundary_size(const VertexSubset& F);

struct InducedSubgraph {
    FiniteGraph graph;
    std::vector<Vertex> to_host;  // induced vertex i -> host vertex
};

// Graph on the vertices of F with only intra-F edges. F must be nonempty.
InducedSubgraph induced_subgraph(const VertexSubset& F);

}  // namespace graphiso
