#include "graphiso/finite_graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace graphiso {

FiniteGraph FiniteGraph::from_edges(Vertex vertex_count,
                                    const std::vector<std::pair<Vertex, Vertex>>& edges) {
    FiniteGraph g;
    g.n_ = vertex_count;
    g.m_ = edges.size();
    if (g.m_ > 0xFFFFFFFFull) throw std::invalid_argument("edge count exceeds 2^32");

    g.edge_u_.resize(edges.size());
    g.edge_v_.resize(edges.size());
    std::vector<std::uint64_t> deg(vertex_count + 1, 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [a, b] = edges[e];
        if (a == b) throw std::invalid_argument("self-loop");
        if (a >= vertex_count || b >= vertex_count)
            throw std::invalid_argument("edge endpoint out of range");
        if (a > b) std::swap(a, b);
        g.edge_u_[e] = a;
        g.edge_v_[e] = b;
        ++deg[a];
        ++deg[b];
    }

    g.offsets_.assign(vertex_count + 1, 0);
    for (Vertex v = 0; v < vertex_count; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.adj_.resize(g.offsets_[vertex_count]);
    g.edge_ids_.resize(g.offsets_[vertex_count]);

    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const Vertex a = g.edge_u_[e], b = g.edge_v_[e];
        g.adj_[cursor[a]] = b;
        g.edge_ids_[cursor[a]++] = static_cast<std::uint32_t>(e);
        g.adj_[cursor[b]] = a;
        g.edge_ids_[cursor[b]++] = static_cast<std::uint32_t>(e);
    }

    // Sort each neighbor list together with its edge ids.
    std::vector<std::pair<Vertex, std::uint32_t>> tmp;
    g.max_degree_ = 0;
    for (Vertex v = 0; v < vertex_count; ++v) {
        const auto lo = g.offsets_[v], hi = g.offsets_[v + 1];
        tmp.clear();
        for (auto i = lo; i < hi; ++i) tmp.emplace_back(g.adj_[i], g.edge_ids_[i]);
        std::sort(tmp.begin(), tmp.end());
        for (std::size_t i = 0; i + 1 < tmp.size(); ++i)
            if (tmp[i].first == tmp[i + 1].first)
                throw std::invalid_argument("duplicate edge");
        for (auto i = lo; i < hi; ++i) {
            g.adj_[i] = tmp[i - lo].first;
            g.edge_ids_[i] = tmp[i - lo].second;
        }
        g.max_degree_ = std::max<std::uint32_t>(g.max_degree_,
                                                static_cast<std::uint32_t>(hi - lo));
    }

    g.regular_ = vertex_count > 0;
    g.common_degree_ = vertex_count > 0 ? g.degree(0) : 0;
    for (Vertex v = 1; v < vertex_count && g.regular_; ++v)
        if (g.degree(v) != g.common_degree_) g.regular_ = false;
    if (!g.regular_) g.common_degree_ = 0;
    return g;
}

bool FiniteGraph::has_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::uint32_t FiniteGraph::edge_id(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) throw std::invalid_argument("no such edge");
    return incident_edge_ids(u)[static_cast<std::size_t>(it - nb.begin())];
}

bool FiniteGraph::is_connected() const {
    if (n_ == 0) return false;
    std::vector<bool> seen(n_, false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    std::uint64_t reached = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : neighbors(v))
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == n_;
}

void FiniteGraph::validate() const {
    for (Vertex v = 0; v < n_; ++v) {
        auto nb = neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] == v) throw std::logic_error("self-loop");
            if (i > 0 && nb[i] <= nb[i - 1]) throw std::logic_error("unsorted or duplicate");
            if (!has_edge(nb[i], v)) throw std::logic_error("asymmetric adjacency");
        }
        if (degree(v) != nb.size()) throw std::logic_error("degree mismatch");
    }
    if (regular_)
        for (Vertex v = 0; v < n_; ++v)
            if (degree(v) != common_degree_) throw std::logic_error("regularity flag wrong");
}

FiniteGraph FiniteGraph::load(std::istream& in) {
    std::uint64_t n = 0, m = 0;
    if (!(in >> n >> m)) throw std::invalid_argument("bad graph header");
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(m);
    for (std::uint64_t e = 0; e < m; ++e) {
        std::uint64_t u, v;
        if (!(in >> u >> v)) throw std::invalid_argument("truncated edge list");
        if (u >= v) throw std::invalid_argument("edges must satisfy u < v");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return from_edges(static_cast<Vertex>(n), edges);
}

void FiniteGraph::save(std::ostream& out) const {
    out << n_ << ' ' << m_ << '\n';
    for (std::uint64_t e = 0; e < m_; ++e)
        out << edge_u_[e] << ' ' << edge_v_[e] << '\n';
}

VertexSubset::VertexSubset(const FiniteGraph& host)
    : host_(&host), bits_((host.vertex_count() + 63) / 64, 0) {}

VertexSubset::VertexSubset(const FiniteGraph& host, const std::vector<Vertex>& members)
    : VertexSubset(host) {
    for (Vertex v : members) {
        if (v >= host.vertex_count()) throw std::invalid_argument("member out of range");
        insert(v);
    }
}

std::vector<Vertex> VertexSubset::members() const {
    std::vector<Vertex> out;
    out.reserve(count_);
    for (Vertex v = 0; v < host_->vertex_count(); ++v)
        if (contains(v)) out.push_back(v);
    return out;
}

VertexSubset VertexSubset::complement() const {
    VertexSubset out(*host_);
    for (Vertex v = 0; v < host_->vertex_count(); ++v)
        if (!contains(v)) out.insert(v);
    return out;
}

bool VertexSubset::lex_less(const VertexSubset& other) const {
    // Vertex 0 most significant: compare bit-reversed words is awkward;
    // walk vertices in order instead (sets here are small when compared).
    const Vertex n = host_->vertex_count();
    for (Vertex v = 0; v < n; ++v) {
        const bool a = contains(v), b = other.contains(v);
        if (a != b) return a && !b;  // containing the smaller vertex sorts first
    }
    return false;
}

EdgeSet::EdgeSet(const FiniteGraph& host, std::vector<std::uint32_t> ids)
    : host_(&host), ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    for (auto id : ids_)
        if (id >= host.edge_count()) throw std::invalid_argument("edge id out of range");
}

EdgeSet edge_boundary(const VertexSubset& F) {
    const FiniteGraph& g = F.host();
    std::vector<std::uint32_t> ids;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!F.contains(v)) continue;
        auto nb = g.neighbors(v);
        auto eid = g.incident_edge_ids(v);
        for (std::size_t i = 0; i < nb.size(); ++i)
            if (!F.contains(nb[i])) ids.push_back(eid[i]);
    }
    return EdgeSet(g, std::move(ids));
}

std::uint64_t edge_boundary_size(const VertexSubset& F) {
    const FiniteGraph& g = F.host();
    std::uint64_t count = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!F.contains(v)) continue;
        for (Vertex w : g.neighbors(v))
            if (!F.contains(w)) ++count;
    }
    return count;
}

InducedSubgraph induced_subgraph(const VertexSubset& F) {
    if (F.empty()) throw std::invalid_argument("induced_subgraph: empty set");
    const FiniteGraph& g = F.host();
    std::vector<Vertex> to_host = F.members();
    std::vector<Vertex> to_local(g.vertex_count(), 0);
    for (std::size_t i = 0; i < to_host.size(); ++i) to_local[to_host[i]] = static_cast<Vertex>(i);

    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v : to_host) {
        for (Vertex w : g.neighbors(v))
            if (w > v && F.contains(w)) edges.emplace_back(to_local[v], to_local[w]);
    }
    return {FiniteGraph::from_edges(static_cast<Vertex>(to_host.size()), edges),
            std::move(to_host)};
}

}  // namespace graphiso
