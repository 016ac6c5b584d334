#include "graphiso/lazy_graph.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <memory>
#include <stdexcept>
#include <unordered_map>

namespace graphiso {

namespace {

void put_i32(std::string& s, std::int32_t v) {
    std::uint32_t u = static_cast<std::uint32_t>(v);
    for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((u >> (8 * i)) & 0xFF));
}

std::int32_t get_i32(const std::string& s, std::size_t off) {
    std::uint32_t u = 0;
    for (int i = 0; i < 4; ++i)
        u |= static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + i])) << (8 * i);
    return static_cast<std::int32_t>(u);
}

void put_i64(std::string& s, std::int64_t v) {
    std::uint64_t u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((u >> (8 * i)) & 0xFF));
}

std::int64_t get_i64(const std::string& s, std::size_t off) {
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i)
        u |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[off + i])) << (8 * i);
    return static_cast<std::int64_t>(u);
}

}  // namespace

std::string LamplighterLazy::encode(const LampState& s) {
    for (std::size_t i = 1; i < s.lamps.size(); ++i)
        if (s.lamps[i - 1] >= s.lamps[i])
            throw std::invalid_argument("lamp positions must be strictly increasing");
    std::string out;
    out.reserve(4 * (s.lamps.size() + 1));
    put_i32(out, s.pos);
    for (std::int32_t l : s.lamps) put_i32(out, l);
    return out;
}

LampState LamplighterLazy::decode(const std::string& label) {
    if (label.size() < 4 || label.size() % 4 != 0)
        throw std::invalid_argument("bad lamplighter label");
    LampState s;
    s.pos = get_i32(label, 0);
    s.lamps.reserve(label.size() / 4 - 1);
    for (std::size_t off = 4; off < label.size(); off += 4) s.lamps.push_back(get_i32(label, off));
    for (std::size_t i = 1; i < s.lamps.size(); ++i)
        if (s.lamps[i - 1] >= s.lamps[i]) throw std::invalid_argument("non-canonical label");
    return s;
}

std::vector<std::string> LamplighterLazy::neighbors(const std::string& label) const {
    const LampState s = decode(label);
    std::vector<std::string> out;
    out.reserve(3);
    {  // toggle the lamp under the lamplighter
        LampState t = s;
        auto it = std::lower_bound(t.lamps.begin(), t.lamps.end(), s.pos);
        if (it != t.lamps.end() && *it == s.pos) t.lamps.erase(it);
        else t.lamps.insert(it, s.pos);
        out.push_back(encode(t));
    }
    for (int step : {-1, +1}) {
        LampState t = s;
        t.pos += step;
        out.push_back(encode(t));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Key128> LamplighterLazy::pack(const LampState& s) {
    if (s.pos < -1024 || s.pos > 1023) return std::nullopt;
    Key128 k;
    for (std::int32_t l : s.lamps) {
        if (l < kLampLo || l > kLampHi) return std::nullopt;
        const int bit = l - kLampLo;
        if (bit < 64) k.lo |= std::uint64_t{1} << bit;
        else k.hi |= std::uint64_t{1} << (bit - 64);
    }
    k.hi |= static_cast<std::uint64_t>(s.pos + 1024) << 48;
    return k;
}

LampState LamplighterLazy::unpack(const Key128& k) {
    LampState s;
    s.pos = static_cast<std::int32_t>(k.hi >> 48) - 1024;
    for (int bit = 0; bit < 64; ++bit)
        if ((k.lo >> bit) & 1) s.lamps.push_back(kLampLo + bit);
    for (int bit = 0; bit < 48; ++bit)
        if ((k.hi >> bit) & 1) s.lamps.push_back(kLampLo + 64 + bit);
    return s;
}

void LamplighterLazy::packed_neighbors(const Key128& k, std::array<Key128, 3>& out,
                                       int& count, int& out_of_window) {
    count = 0;
    out_of_window = 0;
    const std::int32_t pos = static_cast<std::int32_t>(k.hi >> 48) - 1024;
    if (pos >= kLampLo && pos <= kLampHi) {
        Key128 t = k;
        const int bit = pos - kLampLo;
        if (bit < 64) t.lo ^= std::uint64_t{1} << bit;
        else t.hi ^= std::uint64_t{1} << (bit - 64);
        out[count++] = t;
    } else {
        ++out_of_window;
    }
    for (int step : {-1, +1}) {
        const std::int32_t np = pos + step;
        if (np < -1024 || np > 1023) {
            ++out_of_window;
            continue;
        }
        Key128 t = k;
        t.hi = (t.hi & ((std::uint64_t{1} << 48) - 1)) |
               (static_cast<std::uint64_t>(np + 1024) << 48);
        out[count++] = t;
    }
}

std::string LineLazy::encode(std::int64_t z) {
    std::string out;
    put_i64(out, z);
    return out;
}

std::int64_t LineLazy::decode(const std::string& label) {
    if (label.size() != 8) throw std::invalid_argument("bad line label");
    return get_i64(label, 0);
}

std::vector<std::string> LineLazy::neighbors(const std::string& label) const {
    const std::int64_t z = decode(label);
    std::vector<std::string> out{encode(z - 1), encode(z + 1)};
    std::sort(out.begin(), out.end());
    return out;
}

std::string GridLazy::encode(const std::vector<std::int64_t>& coords) const {
    if (coords.size() != dim_) throw std::invalid_argument("bad grid coordinate count");
    std::string out;
    out.reserve(8 * dim_);
    for (std::int64_t c : coords) put_i64(out, c);
    return out;
}

std::vector<std::int64_t> GridLazy::decode(const std::string& label) const {
    if (label.size() != 8 * dim_) throw std::invalid_argument("bad grid label");
    std::vector<std::int64_t> out(dim_);
    for (std::uint32_t d = 0; d < dim_; ++d) out[d] = get_i64(label, 8 * d);
    return out;
}

std::vector<std::string> GridLazy::neighbors(const std::string& label) const {
    auto coords = decode(label);
    std::vector<std::string> out;
    out.reserve(2 * dim_);
    for (std::uint32_t d = 0; d < dim_; ++d)
        for (int step : {-1, +1}) {
            coords[d] += step;
            out.push_back(encode(coords));
            coords[d] -= step;
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::string WrappedFinite::encode(Vertex v) {
    std::string out;
    put_i32(out, static_cast<std::int32_t>(v));
    return out;
}

Vertex WrappedFinite::decode(const std::string& label) {
    if (label.size() != 4) throw std::invalid_argument("bad wrapped label");
    return static_cast<Vertex>(get_i32(label, 0));
}

std::vector<std::string> WrappedFinite::neighbors(const std::string& label) const {
    const Vertex v = decode(label);
    if (v >= g_->vertex_count()) throw std::invalid_argument("wrapped label out of range");
    std::vector<std::string> out;
    for (Vertex w : g_->neighbors(v)) out.push_back(encode(w));
    std::sort(out.begin(), out.end());
    return out;
}

std::uint32_t WrappedFinite::degree(const std::string& label) const {
    return g_->degree(decode(label));
}

std::vector<std::uint32_t> Window::collar_depth() const {
    const Vertex n = graph.vertex_count();
    std::vector<std::uint32_t> depth(n, UINT32_MAX);
    std::deque<Vertex> queue;
    for (Vertex v = 0; v < n; ++v)
        if (graph.degree(v) < ambient_degree(v)) {
            depth[v] = 0;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : graph.neighbors(v))
            if (depth[w] == UINT32_MAX) {
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
    }
    return depth;
}

Window materialize_ball(const LazyGraph& g, const std::string& center,
                        std::uint32_t radius, std::uint64_t budget_vertices) {
    auto labels = std::make_shared<std::vector<std::string>>();
    auto index = std::make_shared<std::unordered_map<std::string, Vertex>>();
    std::vector<std::uint32_t> dist;
    std::vector<std::uint64_t> layer_sizes(radius + 2, 0);

    auto intern = [&](const std::string& label, std::uint32_t d) -> Vertex {
        auto [it, fresh] = index->try_emplace(label, static_cast<Vertex>(labels->size()));
        if (fresh) {
            if (labels->size() >= budget_vertices)
                throw ResourceError("materialize_ball: vertex budget exceeded");
            labels->push_back(label);
            dist.push_back(d);
            layer_sizes[d] += 1;
        }
        return it->second;
    };

    std::vector<std::pair<Vertex, Vertex>> edges;
    std::deque<Vertex> queue{intern(center, 0)};
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        const std::uint32_t d = dist[v];
        if (d > radius) continue;  // collar layer: adjacency not expanded
        for (const std::string& nb : g.neighbors((*labels)[v])) {
            const bool fresh = !index->count(nb);
            const Vertex w = intern(nb, d + 1);
            if (fresh) queue.push_back(w);
            if (w > v) edges.emplace_back(v, w);
            else if (w < v && dist[w] > radius) edges.emplace_back(w, v);
        }
    }

    Window out;
    out.graph = FiniteGraph::from_edges(static_cast<Vertex>(labels->size()), edges);
    out.core = VertexSubset(out.graph);
    for (Vertex v = 0; v < out.graph.vertex_count(); ++v)
        if (dist[v] <= radius) out.core.insert(v);
    out.margin = 1;
    out.source = &g;
    out.label_of = [labels](Vertex v) { return (*labels)[v]; };
    out.index_of = [index](const std::string& label) -> std::int64_t {
        auto it = index->find(label);
        return it == index->end() ? -1 : static_cast<std::int64_t>(it->second);
    };
    out.ambient_degree = [&g, labels](Vertex v) { return g.degree((*labels)[v]); };
    out.layer_sizes = std::move(layer_sizes);
    return out;
}

namespace {

// Shared immutable description of a lamplighter box window:
// lamps restricted to [lamp_lo, lamp_lo + sites), position to [z_lo, z_hi].
struct LampBox {
    std::int32_t lamp_lo, z_lo, z_hi;
    std::uint32_t sites;
    std::uint64_t masks() const { return std::uint64_t{1} << sites; }
    std::uint64_t vertex_of(std::int32_t z, std::uint64_t mask) const {
        return static_cast<std::uint64_t>(z - z_lo) * masks() + mask;
    }
};

}  // namespace

Window lamplighter_window(std::uint32_t n, std::uint32_t margin,
                          std::uint64_t budget_vertices) {
    if (n < 1 || margin < 1) throw std::invalid_argument("lamplighter_window: n, margin >= 1");
    if (n + 2 * margin - 2 > 40) throw std::invalid_argument("lamplighter_window too large");
    auto box = std::make_shared<LampBox>();
    // The ball of radius `margin` around F_n fits in this box: reaching a
    // lamp site at distance k below 1 costs k walk steps plus the toggle.
    box->lamp_lo = 2 - static_cast<std::int32_t>(margin);
    box->z_lo = 1 - static_cast<std::int32_t>(margin);
    box->z_hi = static_cast<std::int32_t>(n + margin);
    box->sites = n + 2 * margin - 2;
    const std::uint64_t masks = box->masks();
    const std::uint64_t zs = static_cast<std::uint64_t>(box->z_hi - box->z_lo + 1);
    const std::uint64_t vcount = zs * masks;
    if (vcount > budget_vertices || vcount > 0xFFFFFFFFull)
        throw ResourceError("lamplighter_window: vertex budget exceeded");

    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve((zs - 1) * masks + box->sites * (masks / 2));
    for (std::int32_t z = box->z_lo; z <= box->z_hi; ++z) {
        const bool can_toggle = z >= box->lamp_lo &&
                                z < box->lamp_lo + static_cast<std::int32_t>(box->sites);
        const std::uint64_t zbit = can_toggle ? std::uint64_t{1} << (z - box->lamp_lo) : 0;
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
            const Vertex v = static_cast<Vertex>(box->vertex_of(z, mask));
            if (z < box->z_hi)
                edges.emplace_back(v, static_cast<Vertex>(box->vertex_of(z + 1, mask)));
            if (can_toggle && !(mask & zbit))
                edges.emplace_back(v, static_cast<Vertex>(box->vertex_of(z, mask | zbit)));
        }
    }

    Window out;
    out.graph = FiniteGraph::from_edges(static_cast<Vertex>(vcount), edges);
    out.core = VertexSubset(out.graph);
    // Core = F_n: position in [1, n], lamps within [1, n].
    std::uint64_t inside = 0;
    for (std::uint32_t i = 0; i < box->sites; ++i) {
        const std::int32_t site = box->lamp_lo + static_cast<std::int32_t>(i);
        if (site >= 1 && site <= static_cast<std::int32_t>(n)) inside |= std::uint64_t{1} << i;
    }
    for (std::int32_t z = 1; z <= static_cast<std::int32_t>(n); ++z)
        for (std::uint64_t mask = 0; mask < masks; ++mask)
            if (!(mask & ~inside)) out.core.insert(static_cast<Vertex>(box->vertex_of(z, mask)));
    out.margin = margin;
    out.source = nullptr;
    auto decode_state = [box](Vertex v) {
        LampState s;
        s.pos = box->z_lo + static_cast<std::int32_t>(v / box->masks());
        const std::uint64_t mask = v % box->masks();
        for (std::uint32_t i = 0; i < box->sites; ++i)
            if ((mask >> i) & 1) s.lamps.push_back(box->lamp_lo + static_cast<std::int32_t>(i));
        return s;
    };
    out.label_of = [decode_state](Vertex v) { return LamplighterLazy::encode(decode_state(v)); };
    out.index_of = [box](const std::string& label) -> std::int64_t {
        const LampState s = LamplighterLazy::decode(label);
        if (s.pos < box->z_lo || s.pos > box->z_hi) return -1;
        std::uint64_t mask = 0;
        for (std::int32_t l : s.lamps) {
            const std::int64_t i = l - box->lamp_lo;
            if (i < 0 || i >= box->sites) return -1;
            mask |= std::uint64_t{1} << i;
        }
        return static_cast<std::int64_t>(box->vertex_of(s.pos, mask));
    };
    out.ambient_degree = [](Vertex) -> std::uint32_t { return 3; };
    return out;
}

std::vector<double> ambient_walk_step(const Window& w, const std::vector<double>& f) {
    const Vertex n = w.graph.vertex_count();
    if (f.size() != n) throw std::invalid_argument("ambient_walk_step: size mismatch");
    std::vector<double> out(n, 0.0);
    for (Vertex v = 0; v < n; ++v) {
        double s = 0.0;
        for (Vertex u : w.graph.neighbors(v)) s += f[u];
        out[v] = s / static_cast<double>(w.ambient_degree(v));
    }
    return out;
}

}  // namespace graphiso
