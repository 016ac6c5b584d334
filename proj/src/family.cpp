#include "graphiso/family.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace graphiso {

FiniteGraph make_cycle(std::uint32_t n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return FiniteGraph::from_edges(n, edges);
}

FiniteGraph make_path(std::uint32_t n) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return FiniteGraph::from_edges(n, edges);
}

FiniteGraph make_complete(std::uint32_t n) {
    if (n < 2) throw std::invalid_argument("complete needs n >= 2");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return FiniteGraph::from_edges(n, edges);
}

FiniteGraph make_hypercube(std::uint32_t dim) {
    if (dim < 1 || dim > 24) throw std::invalid_argument("hypercube dim in [1,24]");
    const Vertex n = Vertex{1} << dim;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v < n; ++v)
        for (std::uint32_t b = 0; b < dim; ++b) {
            Vertex w = v ^ (Vertex{1} << b);
            if (w > v) edges.emplace_back(v, w);
        }
    return FiniteGraph::from_edges(n, edges);
}

FiniteGraph make_grid_box(const std::vector<std::uint32_t>& sides) {
    if (sides.empty()) throw std::invalid_argument("grid needs at least one side");
    std::uint64_t n = 1;
    for (auto s : sides) {
        if (s == 0) throw std::invalid_argument("grid side must be positive");
        n *= s;
        if (n > 0x7FFFFFFFull) throw std::invalid_argument("grid too large");
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<std::uint64_t> stride(sides.size(), 1);
    for (std::size_t d = 1; d < sides.size(); ++d) stride[d] = stride[d - 1] * sides[d - 1];
    for (std::uint64_t v = 0; v < n; ++v) {
        std::uint64_t rest = v;
        for (std::size_t d = 0; d < sides.size(); ++d) {
            const std::uint64_t coord = (rest / stride[d]) % sides[d];
            if (coord + 1 < sides[d])
                edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(v + stride[d]));
            (void)rest;
        }
    }
    return FiniteGraph::from_edges(static_cast<Vertex>(n), edges);
}

FiniteGraph make_petersen() {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v < 5; ++v) {
        edges.emplace_back(v, (v + 1) % 5);          // outer pentagon
        edges.emplace_back(5 + v, 5 + (v + 2) % 5);  // inner pentagram
        edges.emplace_back(v, 5 + v);                // spokes
    }
    return FiniteGraph::from_edges(10, edges);
}

FiniteGraph make_random_regular(std::uint32_t n, std::uint32_t d, std::uint64_t seed) {
    if (d == 0 || d >= n) throw std::invalid_argument("random-regular needs 0 < d < n");
    if ((std::uint64_t(n) * d) % 2 != 0)
        throw std::invalid_argument("random-regular needs n*d even");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 20000; ++attempt) {
        std::vector<Vertex> stubs;
        stubs.reserve(std::size_t(n) * d);
        for (Vertex v = 0; v < n; ++v)
            for (std::uint32_t k = 0; k < d; ++k) stubs.push_back(v);
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::vector<std::pair<Vertex, Vertex>> edges;
        bool ok = true;
        std::vector<std::vector<Vertex>> seen(n);
        for (std::size_t i = 0; i < stubs.size() && ok; i += 2) {
            Vertex a = stubs[i], b = stubs[i + 1];
            if (a == b) { ok = false; break; }
            auto& sa = seen[std::min(a, b)];
            if (std::find(sa.begin(), sa.end(), std::max(a, b)) != sa.end()) { ok = false; break; }
            sa.push_back(std::max(a, b));
            edges.emplace_back(a, b);
        }
        if (!ok) continue;
        FiniteGraph g = FiniteGraph::from_edges(n, edges);
        if (g.is_connected()) return g;
    }
    throw std::runtime_error("random-regular: pairing model failed to produce a graph");
}

TreeRayGraph tree_ray_graph(std::uint32_t depth, std::uint32_t ray_length) {
    if (depth < 1 || depth > 24) throw std::invalid_argument("tree depth in [1,24]");
    if (ray_length < 1) throw std::invalid_argument("ray_length >= 1");
    // Tree vertices are heap-indexed: root = 0, children of t are 2t+1, 2t+2.
    const Vertex tree_size = (Vertex{1} << (depth + 1)) - 1;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex t = 0; 2 * t + 2 < tree_size; ++t) {
        edges.emplace_back(t, 2 * t + 1);
        edges.emplace_back(t, 2 * t + 2);
    }
    // Ray vertices follow the tree block.
    edges.emplace_back(Vertex{0}, tree_size);
    for (Vertex r = 0; r + 1 < ray_length; ++r)
        edges.emplace_back(tree_size + r, tree_size + r + 1);

    TreeRayGraph out;
    out.graph = FiniteGraph::from_edges(tree_size + ray_length, edges);
    out.root = 0;
    // T_m: leftmost vertex at depth (depth - m + 1) plus its descendants.
    for (std::uint32_t m = 1; m <= depth; ++m) {
        const std::uint32_t top_depth = depth - m + 1;
        Vertex top = (Vertex{1} << top_depth) - 1;  // leftmost at that depth
        std::vector<Vertex> set;
        std::vector<Vertex> stack{top};
        while (!stack.empty()) {
            Vertex t = stack.back();
            stack.pop_back();
            set.push_back(t);
            if (2 * t + 2 < tree_size) {
                stack.push_back(2 * t + 1);
                stack.push_back(2 * t + 2);
            }
        }
        std::sort(set.begin(), set.end());
        out.subtree_sets.push_back(std::move(set));
    }
    return out;
}

namespace {

std::uint64_t parse_u64(const std::string& s) {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad number in family spec: " + s);
    return v;
}

}  // namespace

FiniteGraph generate_family(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (name == "cycle") return make_cycle(static_cast<std::uint32_t>(parse_u64(arg)));
    if (name == "path") return make_path(static_cast<std::uint32_t>(parse_u64(arg)));
    if (name == "complete") return make_complete(static_cast<std::uint32_t>(parse_u64(arg)));
    if (name == "hypercube") return make_hypercube(static_cast<std::uint32_t>(parse_u64(arg)));
    if (name == "petersen") return make_petersen();
    if (name == "grid") {
        std::vector<std::uint32_t> sides;
        std::stringstream ss(arg);
        std::string part;
        while (std::getline(ss, part, 'x'))
            sides.push_back(static_cast<std::uint32_t>(parse_u64(part)));
        return make_grid_box(sides);
    }
    if (name == "tree-ray") {
        auto x = arg.find('x');
        if (x == std::string::npos) return tree_ray_graph(
            static_cast<std::uint32_t>(parse_u64(arg)), 4).graph;
        return tree_ray_graph(static_cast<std::uint32_t>(parse_u64(arg.substr(0, x))),
                              static_cast<std::uint32_t>(parse_u64(arg.substr(x + 1)))).graph;
    }
    if (name == "random-regular") {
        std::uint64_t n = 0, d = 0, seed = 0;
        std::stringstream ss(arg);
        std::string part;
        while (std::getline(ss, part, ',')) {
            auto eq = part.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("bad key=value: " + part);
            const std::string key = part.substr(0, eq);
            const std::uint64_t val = parse_u64(part.substr(eq + 1));
            if (key == "n") n = val;
            else if (key == "d") d = val;
            else if (key == "seed") seed = val;
            else throw std::invalid_argument("unknown key: " + key);
        }
        if (n == 0 || d == 0) throw std::invalid_argument("random-regular needs n and d");
        return make_random_regular(static_cast<std::uint32_t>(n),
                                   static_cast<std::uint32_t>(d), seed);
    }
    throw std::invalid_argument("unknown family: " + name);
}

}  // namespace graphiso
