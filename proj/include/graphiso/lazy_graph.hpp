// lazy_graph.hpp -- lazily generated infinite graphs with canonical label
// codecs, plus materialization into finite windows.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphiso/finite_graph.hpp"

namespace graphiso {

// Thrown when a materialization would exceed the configured vertex budget.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A vertex of a lazily generated graph is identified by its canonical byte
// encoding. neighbors() must be symmetric and return canonical encodings.
class LazyGraph {
public:
    virtual ~LazyGraph() = default;
    virtual std::vector<std::string> neighbors(const std::string& label) const = 0;
    virtual std::uint32_t degree_bound() const = 0;
    // Degree of the vertex in the infinite graph (defaults to the bound,
    // which is exact for regular graphs).
    virtual std::uint32_t degree(const std::string&) const { return degree_bound(); }
};

// 128-bit packed state key used by the high-volume walk routines.
struct Key128 {
    std::uint64_t hi = 0, lo = 0;
    friend bool operator==(const Key128&, const Key128&) = default;
    friend auto operator<=>(const Key128&, const Key128&) = default;
};

// Lamplighter group C2 wr Z with the "switch or walk" generators: from
// (f, z) one may toggle the lamp at z or move z by +-1. 3-regular.
struct LampState {
    std::vector<std::int32_t> lamps;  // sorted positions of lamps that are on
    std::int32_t pos = 0;
};

class LamplighterLazy : public LazyGraph {
public:
    std::vector<std::string> neighbors(const std::string& label) const override;
    std::uint32_t degree_bound() const override { return 3; }

    static std::string encode(const LampState& s);
    static LampState decode(const std::string& label);

    // Packed codec for walk kernels: lamps restricted to [kLampLo, kLampHi],
    // position to [-1024, 1023]. States outside the packable window are
    // reported as such (callers track them as truncation loss).
    static constexpr std::int32_t kLampLo = -55;
    static constexpr std::int32_t kLampHi = 56;
    static std::optional<Key128> pack(const LampState& s);
    static LampState unpack(const Key128& k);
    // Neighbors in packed space; out_of_window counts dropped neighbors.
    static void packed_neighbors(const Key128& k, std::array<Key128, 3>& out,
                                 int& count, int& out_of_window);
};

// The integer line Z with unit steps, as a lazy graph (2-regular).
class LineLazy : public LazyGraph {
public:
    std::vector<std::string> neighbors(const std::string& label) const override;
    std::uint32_t degree_bound() const override { return 2; }
    static std::string encode(std::int64_t z);
    static std::int64_t decode(const std::string& label);
};

// Z^d grid as a lazy graph (2d-regular).
class GridLazy : public LazyGraph {
public:
    explicit GridLazy(std::uint32_t dim) : dim_(dim) {}
    std::vector<std::string> neighbors(const std::string& label) const override;
    std::uint32_t degree_bound() const override { return 2 * dim_; }
    std::string encode(const std::vector<std::int64_t>& coords) const;
    std::vector<std::int64_t> decode(const std::string& label) const;

private:
    std::uint32_t dim_;
};

// A finite graph wrapped as a lazy graph; labels are little-endian u32.
class WrappedFinite : public LazyGraph {
public:
    explicit WrappedFinite(const FiniteGraph& g) : g_(&g) {}
    std::vector<std::string> neighbors(const std::string& label) const override;
    std::uint32_t degree_bound() const override { return g_->max_degree(); }
    std::uint32_t degree(const std::string& label) const override;
    static std::string encode(Vertex v);
    static Vertex decode(const std::string& label);

private:
    const FiniteGraph* g_;
};

// A finite piece of a lazy graph. Every vertex of `core` has all of its
// lazy-graph neighbors present; more generally every vertex at collar depth
// >= 1 does. Margin is the radius of the materialized collar around core.
struct Window {
    Window() = default;
    // Moves and copies rebind `core` to the relocated `graph`; without this
    // the subset would keep pointing at the moved-from graph object.
    Window(Window&& o) noexcept { *this = std::move(o); }
    Window& operator=(Window&& o) noexcept {
        graph = std::move(o.graph);
        core = std::move(o.core);
        core.rehost(graph);
        margin = o.margin;
        source = o.source;
        label_of = std::move(o.label_of);
        index_of = std::move(o.index_of);
        ambient_degree = std::move(o.ambient_degree);
        layer_sizes = std::move(o.layer_sizes);
        return *this;
    }
    Window(const Window& o) { *this = o; }
    Window& operator=(const Window& o) {
        if (this == &o) return *this;
        graph = o.graph;
        core = o.core;
        core.rehost(graph);
        margin = o.margin;
        source = o.source;
        label_of = o.label_of;
        index_of = o.index_of;
        ambient_degree = o.ambient_degree;
        layer_sizes = o.layer_sizes;
        return *this;
    }

    FiniteGraph graph;
    VertexSubset core;
    std::uint32_t margin = 0;
    const LazyGraph* source = nullptr;
    std::function<std::string(Vertex)> label_of;
    // -1 when the label is not materialized.
    std::function<std::int64_t(const std::string&)> index_of;
    std::function<std::uint32_t(Vertex)> ambient_degree;
    std::vector<std::uint64_t> layer_sizes;  // BFS layer sizes (balls only)

    // Distance from each vertex to the nearest vertex with truncated
    // adjacency (0 there). Values at vertices with depth >= r+1 of an
    // ambient-walk iterate after r steps are exact.
    std::vector<std::uint32_t> collar_depth() const;
};

// Ball of the given radius around `center`, with one extra collar layer.
Window materialize_ball(const LazyGraph& g, const std::string& center,
                        std::uint32_t radius, std::uint64_t budget_vertices);

// The lamplighter Foelner set F_n = {(f, z) : z in [1, n], supp f in [1, n]}
// materialized with the given collar margin. |F_n| = n 2^n and the edge
// boundary of F_n has 2^{n+1} edges.
Window lamplighter_window(std::uint32_t n, std::uint32_t margin,
                          std::uint64_t budget_vertices);

// One step of the ambient random walk on a window: averages over the
// lazy-graph neighborhood (degree taken from the infinite graph). Missing
// neighbors contribute 0; exact wherever collar depth exceeds the number of
// steps taken so far.
std::vector<double> ambient_walk_step(const Window& w, const std::vector<double>& f);

}  // namespace graphiso
