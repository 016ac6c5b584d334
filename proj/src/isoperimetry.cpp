#include "graphiso/isoperimetry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace graphiso {

namespace {

VertexSubset subset_from_mask(const FiniteGraph& g, std::uint32_t mask) {
    VertexSubset F(g);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if ((mask >> v) & 1u) F.insert(v);
    return F;
}

bool mask_lex_less(std::uint32_t a, std::uint32_t b) {
    const std::uint32_t diff = a ^ b;
    if (diff == 0) return false;
    return (a >> std::countr_zero(diff)) & 1u;
}

void finish_envelope(Profile& p) {
    // Non-increasing envelope: running minimum over sizes <= x.
    p.envelope.assign(p.entries.size(), 0.0);
    double running = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.entries.size(); ++i) {
        if (p.entries[i].size != 0) running = std::min(running, p.entries[i].ratio);
        p.envelope[i] = running;
    }
}

}  // namespace

Profile profile_exact(const FiniteGraph& g, std::uint32_t max_vertices) {
    const Vertex n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("profile needs at least 2 vertices");
    if (max_vertices > 24) throw std::invalid_argument("profile_exact: hard cap is 24 vertices");
    if (n > max_vertices) throw std::invalid_argument("profile_exact: graph too large");
    const std::uint64_t half = n / 2;
    std::vector<std::uint64_t> best_b(half + 1, UINT64_MAX);
    std::vector<std::uint32_t> best_mask(half + 1, 0);

    std::uint32_t mask = 0;
    std::uint64_t boundary = 0;
    std::uint32_t size = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < total; ++i) {
        const Vertex v = static_cast<Vertex>(std::countr_zero(i));
        std::uint32_t inside = 0;
        for (Vertex u : g.neighbors(v)) inside += (mask >> u) & 1u;
        if ((mask >> v) & 1u) {
            mask ^= 1u << v;
            --size;
            boundary += 2 * std::uint64_t{inside};
            boundary -= g.degree(v);
        } else {
            mask ^= 1u << v;
            ++size;
            boundary += g.degree(v);
            boundary -= 2 * std::uint64_t{inside};
        }
        if (size >= 1 && size <= half &&
            (boundary < best_b[size] ||
             (boundary == best_b[size] && mask_lex_less(mask, best_mask[size])))) {
            best_b[size] = boundary;
            best_mask[size] = mask;
        }
    }

    Profile out;
    out.entries.resize(half);
    for (std::uint64_t s = 1; s <= half; ++s) {
        ProfileEntry& e = out.entries[s - 1];
        e.size = s;
        e.boundary = best_b[s];
        e.ratio = static_cast<double>(best_b[s]) / static_cast<double>(s);
        e.witness = subset_from_mask(g, best_mask[s]);
        e.exact = true;
    }
    finish_envelope(out);
    return out;
}

namespace {

// Enumerates connected subsets containing `root` whose other vertices all
// exceed `root`, up to max_size, via frontier extension.
template <typename Visit>
void enum_connected(const FiniteGraph& g, Vertex root, std::uint32_t max_size, Visit&& visit) {
    std::vector<Vertex> members{root};
    std::vector<char> in(g.vertex_count(), 0), banned(g.vertex_count(), 0);
    in[root] = 1;
    std::uint64_t boundary = g.degree(root);
    // Candidates: neighbors of the current set, > root, not yet banned.
    std::function<void()> extend = [&]() {
        visit(members, boundary);
        if (members.size() >= max_size) return;
        std::vector<Vertex> cands;
        for (Vertex m : members)
            for (Vertex u : g.neighbors(m))
                if (u > root && !in[u] && !banned[u] &&
                    std::find(cands.begin(), cands.end(), u) == cands.end())
                    cands.push_back(u);
        std::sort(cands.begin(), cands.end());
        std::vector<Vertex> newly_banned;
        for (Vertex c : cands) {
            std::uint32_t inside = 0;
            for (Vertex u : g.neighbors(c)) inside += in[u];
            members.push_back(c);
            in[c] = 1;
            boundary += g.degree(c);
            boundary -= 2 * std::uint64_t{inside};
            extend();
            boundary += 2 * std::uint64_t{inside};
            boundary -= g.degree(c);
            in[c] = 0;
            members.pop_back();
            banned[c] = 1;  // later branches exclude c to avoid duplicates
            newly_banned.push_back(c);
        }
        for (Vertex c : newly_banned) banned[c] = 0;
    };
    extend();
}

}  // namespace

Profile profile_small_sets(const FiniteGraph& g, std::uint32_t max_size) {
    const Vertex n = g.vertex_count();
    if (max_size < 1 || max_size > 10)
        throw std::invalid_argument("profile_small_sets: max_size in [1,10]");
    if (2 * std::uint64_t{max_size} > n)
        throw std::invalid_argument("profile_small_sets: max_size exceeds |V|/2");
    std::vector<std::uint64_t> best_b(max_size + 1, UINT64_MAX);
    std::vector<std::vector<Vertex>> best_set(max_size + 1);
    // Keep several low-boundary connected candidates per size so disjoint
    // unions can realize disconnected optima (two far-apart pieces).
    constexpr std::size_t kCandidates = 8;
    using Cand = std::pair<std::uint64_t, std::vector<Vertex>>;
    std::vector<std::vector<Cand>> cands(max_size + 1);
    for (Vertex root = 0; root < n; ++root)
        enum_connected(g, root, max_size,
                       [&](const std::vector<Vertex>& members, std::uint64_t boundary) {
                           const std::size_t s = members.size();
                           if (boundary < best_b[s]) {
                               best_b[s] = boundary;
                               best_set[s] = members;
                               std::sort(best_set[s].begin(), best_set[s].end());
                           }
                           auto& list = cands[s];
                           if (list.size() == kCandidates && boundary >= list.back().first)
                               return;
                           std::vector<Vertex> sorted = members;
                           std::sort(sorted.begin(), sorted.end());
                           auto pos = std::upper_bound(
                               list.begin(), list.end(), boundary,
                               [](std::uint64_t b, const Cand& c) { return b < c.first; });
                           list.insert(pos, Cand{boundary, std::move(sorted)});
                           if (list.size() > kCandidates) list.pop_back();
                       });

    // Unions of the connected witnesses can beat single connected sets on
    // disconnected optima; combine disjoint pairs (still an upper bound).
    for (std::uint32_t s = 2; s <= max_size; ++s)
        for (std::uint32_t a = 1; 2 * a <= s; ++a) {
            const std::uint32_t b = s - a;
            for (const auto& ca : cands[a])
                for (const auto& cb : cands[b]) {
                    if (ca.first + cb.first >= best_b[s]) continue;
                    std::vector<Vertex> merged = ca.second;
                    merged.insert(merged.end(), cb.second.begin(), cb.second.end());
                    std::sort(merged.begin(), merged.end());
                    if (std::adjacent_find(merged.begin(), merged.end()) != merged.end())
                        continue;
                    VertexSubset F(g, merged);
                    const std::uint64_t bd = edge_boundary_size(F);
                    if (bd < best_b[s]) {
                        best_b[s] = bd;
                        best_set[s] = merged;
                    }
                }
        }

    Profile out;
    out.entries.resize(max_size);
    for (std::uint32_t s = 1; s <= max_size; ++s) {
        ProfileEntry& e = out.entries[s - 1];
        if (best_b[s] == UINT64_MAX) continue;
        e.size = s;
        e.boundary = best_b[s];
        e.ratio = static_cast<double>(best_b[s]) / s;
        e.witness = VertexSubset(g, best_set[s]);
        e.exact = false;
    }
    finish_envelope(out);
    return out;
}

OptimalSets optimal_sets(const Profile& profile) {
    OptimalSets out;
    for (std::size_t i = 0; i < profile.entries.size(); ++i) {
        const auto& e = profile.entries[i];
        if (e.size == 0) continue;
        if (e.ratio <= profile.envelope[i] * (1.0 + 1e-12)) out.sizes.push_back(e.size);
    }
    for (std::uint64_t x : out.sizes) {
        if (2 * x > profile.entries.size() || profile.entries[2 * x - 1].size == 0) continue;
        const double gx =
            static_cast<double>(profile.entries[x - 1].boundary) / static_cast<double>(x);
        // Two disjoint optimal copies would realize ratio G(x) at size 2x.
        if (profile.entries[2 * x - 1].ratio > gx * (1.0 + 1e-12)) {
            out.doubling_consistent = false;
            out.doubling_violations.push_back(x);
        }
    }
    return out;
}

namespace {

// BFS distances to the complement for members of F: 1 on vertices adjacent
// to the complement, growing inward. Returns per-host-vertex distances
// (0 outside F).
std::vector<std::uint32_t> complement_distance(const FiniteGraph& g, const VertexSubset& F) {
    std::vector<std::uint32_t> dist(g.vertex_count(), 0);
    std::deque<Vertex> queue;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!F.contains(v)) continue;
        for (Vertex u : g.neighbors(v))
            if (!F.contains(u)) {
                dist[v] = 1;
                queue.push_back(v);
                break;
            }
    }
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex u : g.neighbors(v))
            if (F.contains(u) && dist[u] == 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    return dist;
}

// Eccentricity of `start` within F; also reports the farthest vertex.
std::pair<std::uint32_t, Vertex> ecc_in_set(const FiniteGraph& g, const VertexSubset& F,
                                            Vertex start, std::vector<std::int64_t>& dist) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<Vertex> queue{start};
    dist[start] = 0;
    std::uint32_t far = 0;
    Vertex far_v = start;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex u : g.neighbors(v))
            if (F.contains(u) && dist[u] < 0) {
                dist[u] = dist[v] + 1;
                if (static_cast<std::uint32_t>(dist[u]) > far) {
                    far = static_cast<std::uint32_t>(dist[u]);
                    far_v = u;
                }
                queue.push_back(u);
            }
    }
    return {far, far_v};
}

}  // namespace

GeometryReport set_geometry(const FiniteGraph& g, const VertexSubset& F) {
    if (F.empty()) throw std::invalid_argument("set_geometry: empty set");
    if (F.size() == g.vertex_count())
        throw std::invalid_argument("set_geometry: set must be a proper subset");
    GeometryReport rep;
    rep.size = F.size();
    rep.boundary = edge_boundary_size(F);

    const auto dist = complement_distance(g, F);
    std::uint32_t inr = 0;
    std::uint64_t total = 0;
    std::uint64_t reached = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (F.contains(v) && dist[v] > 0) {
            inr = std::max(inr, dist[v]);
            total += dist[v];
            ++reached;
        }
    // A component of F with no boundary edge would be unreachable; it can
    // only be the whole graph, excluded above.
    if (reached != F.size())
        throw std::logic_error("set_geometry: complement BFS missed part of F");
    rep.inradius = inr - 1;
    rep.mean_dist_boundary = static_cast<double>(total) / static_cast<double>(F.size());

    // Connectivity and diameter within F.
    const auto members = F.members();
    std::vector<std::int64_t> d(g.vertex_count());
    auto [e0, far0] = ecc_in_set(g, F, members.front(), d);
    std::uint64_t seen = 0;
    for (Vertex v : members) seen += d[v] >= 0;
    rep.induced_connected = seen == F.size();
    if (rep.induced_connected) {
        if (F.size() <= 4096) {
            std::uint32_t diam = 0;
            for (Vertex v : members) diam = std::max(diam, ecc_in_set(g, F, v, d).first);
            rep.diameter = diam;
        } else {
            // Double sweep: exact on trees, a lower bound in general.
            auto [e1, far1] = ecc_in_set(g, F, far0, d);
            (void)far1;
            rep.diameter = std::max(e0, e1);
        }
    }
    return rep;
}

GrowthTable volume_growth(const LazyGraph& g, const std::string& center,
                          std::uint32_t radius, std::uint64_t budget_vertices) {
    Window w = materialize_ball(g, center, radius, budget_vertices);
    GrowthTable out;
    std::uint64_t cum = 0;
    for (std::uint32_t r = 0; r <= radius; ++r) {
        cum += w.layer_sizes[r];
        out.ball_sizes.push_back(cum);
        out.sphere_sizes.push_back(w.layer_sizes[r]);
    }
    return out;
}

std::vector<BoundCheck> geometry_bound_checks(const GeometryReport& geo,
                                              const GrowthTable& growth,
                                              std::optional<double> kappa1_induced,
                                              std::uint32_t induced_max_degree) {
    std::vector<BoundCheck> out;
    {
        BoundCheck c;
        c.name = "boundary floor: |dF| >= 1";
        c.lhs = static_cast<double>(geo.boundary);
        c.rhs = 1.0;
        c.holds = c.lhs >= c.rhs;
        out.push_back(c);
    }
    {
        // Volume lemma: F is covered by balls of radius inrad(F) around its
        // boundary vertices, so |F| <= f_V(inrad) |dF|.
        BoundCheck c;
        c.name = "volume lemma: |F| <= f_V(inrad) |dF|";
        if (geo.inradius < growth.ball_sizes.size()) {
            c.lhs = static_cast<double>(growth.ball_sizes[geo.inradius]) *
                    static_cast<double>(geo.boundary);
            c.rhs = static_cast<double>(geo.size);
            c.holds = c.lhs >= c.rhs;
        } else {
            c.applicable = false;
        }
        out.push_back(c);
    }
    {
        BoundCheck c;
        c.name = "diameter bound: diam <= 3 k log|F| / (kappa1(F) log 2)";
        if (geo.induced_connected && geo.diameter >= 3 && kappa1_induced &&
            *kappa1_induced > 0.0) {
            c.lhs = 3.0 * induced_max_degree * std::log(static_cast<double>(geo.size)) /
                    (*kappa1_induced * std::log(2.0));
            c.rhs = static_cast<double>(geo.diameter);
            c.holds = c.lhs >= c.rhs;
        } else {
            c.applicable = false;
        }
        out.push_back(c);
    }
    {
        BoundCheck c;
        c.name = "inrad <= mean distance to boundary";
        c.lhs = geo.mean_dist_boundary;
        c.rhs = static_cast<double>(geo.inradius);
        c.holds = c.lhs >= c.rhs;
        out.push_back(c);
    }
    return out;
}

RadialCheck radial_check(const GeometryReport& geo, double K, double k) {
    RadialCheck out;
    out.constant_K = K;
    out.exponent_k = k;
    out.ratio = K * static_cast<double>(geo.boundary) *
                std::pow(1.0 + geo.inradius, k) / static_cast<double>(geo.size);
    out.holds = out.ratio >= 1.0;
    return out;
}

ProfileFit classify_profile(const Profile& profile) {
    ProfileFit fit;
    std::vector<double> xs, es;
    for (std::size_t i = 0; i < profile.envelope.size(); ++i) {
        if (profile.entries[i].size == 0) continue;
        xs.push_back(static_cast<double>(i + 1));
        es.push_back(profile.envelope[i]);
    }
    if (xs.size() < 2) return fit;
    const double emin = *std::min_element(es.begin(), es.end());
    const double emax = *std::max_element(es.begin(), es.end());
    fit.c_strong = emin;

    // log-log least squares: log(1/e) = log K + (1/k) log x.
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double t = std::log(xs[i]);
        const double y = std::log(1.0 / es[i]);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double m = static_cast<double>(xs.size());
    const double denom = m * stt - st * st;
    const double slope = denom != 0.0 ? (m * sty - st * sy) / denom : 0.0;
    const double icept = (sy - slope * st) / m;
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = std::log(1.0 / es[i]) - (icept + slope * std::log(xs[i]));
        rss += r * r;
    }
    fit.rss = rss / m;
    fit.radial_K = std::exp(icept);
    fit.radial_k = slope > 1e-9 ? 1.0 / slope : 0.0;

    // A genuinely radial profile has log(1/e) growing with slope 1/k >= 0.4
    // in the accessible range; near-flat envelopes indicate a strong ratio.
    if (emax > 0.0 && slope < 0.4) fit.cls = ProfileClass::StrongIsoperimetry;
    else if (fit.rss < 0.05) fit.cls = ProfileClass::Radial;
    else fit.cls = ProfileClass::Degenerate;
    return fit;
}

// ------------------------- lamplighter counterexample ----------------------

namespace {

struct TileIndexer {
    std::uint32_t n, j, blocks;      // blocks = n / j
    std::uint64_t reps;              // 2^{n-j} representatives per layer
    std::uint64_t block_mask(std::uint32_t i) const {
        return ((std::uint64_t{1} << j) - 1) << (i * j);
    }
    std::uint64_t compress(std::uint32_t i, std::uint64_t f0) const {
        const std::uint64_t low = f0 & ((std::uint64_t{1} << (i * j)) - 1);
        const std::uint64_t high = (f0 >> ((i + 1) * j)) << (i * j);
        return low | high;
    }
    std::uint64_t expand(std::uint32_t i, std::uint64_t c) const {
        const std::uint64_t low = c & ((std::uint64_t{1} << (i * j)) - 1);
        const std::uint64_t high = (c >> (i * j)) << ((i + 1) * j);
        return low | high;
    }
    std::uint64_t tile_id(std::uint32_t i, std::uint64_t f0) const {
        return i * reps + compress(i, f0);
    }
};

}  // namespace

Counterexample counterexample_build(std::uint32_t n, std::uint32_t j,
                                    std::uint64_t budget_vertices) {
    if (j < 1 || n % j != 0 || n < 2 * j)
        throw std::invalid_argument("counterexample needs j | n and n >= 2j");
    if (n > 26) throw std::invalid_argument("counterexample: n too large");

    Counterexample out;
    out.window = lamplighter_window(n, 1, budget_vertices);
    const Window& w = out.window;
    const std::uint64_t masks = std::uint64_t{1} << n;
    auto vertex_at = [&](std::uint32_t z, std::uint64_t mask) {
        // margin-1 box: z in [0, n+1], lamp sites [1, n] = mask bits 0..n-1
        return static_cast<Vertex>(static_cast<std::uint64_t>(z) * masks + mask);
    };

    TileIndexer tiles{n, j, n / j, std::uint64_t{1} << (n - j)};
    const std::uint64_t tile_count = tiles.blocks * tiles.reps;
    const std::uint64_t root = tile_count;  // auxiliary complement vertex

    // BFS over the auxiliary graph: tiles plus the complement super-vertex.
    // Tiles in the first and last layer touch the complement of F_n; tiles
    // of consecutive layers are adjacent when their representatives agree
    // off the two blocks.
    std::vector<std::int64_t> parent(tile_count + 1, -2);
    std::deque<std::uint64_t> queue{root};
    parent[root] = -1;
    auto visit = [&](std::uint64_t t, std::uint64_t par) {
        if (parent[t] == -2) {
            parent[t] = static_cast<std::int64_t>(par);
            queue.push_back(t);
        }
    };
    while (!queue.empty()) {
        const std::uint64_t t = queue.front();
        queue.pop_front();
        if (t == root) {
            for (std::uint64_t c = 0; c < tiles.reps; ++c) visit(tiles.tile_id(0, tiles.expand(0, c)), root);
            for (std::uint64_t c = 0; c < tiles.reps; ++c)
                visit(tiles.tile_id(tiles.blocks - 1, tiles.expand(tiles.blocks - 1, c)), root);
            continue;
        }
        const std::uint32_t i = static_cast<std::uint32_t>(t / tiles.reps);
        const std::uint64_t f0 = tiles.expand(i, t % tiles.reps);
        for (int dir : {-1, +1}) {
            if (dir < 0 && i == 0) continue;
            if (dir > 0 && i + 1 == tiles.blocks) continue;
            const std::uint32_t i2 = i + dir;
            const std::uint64_t base = f0 & ~tiles.block_mask(i2);
            for (std::uint64_t b = 0; b < (std::uint64_t{1} << j); ++b)
                visit(tiles.tile_id(i2, base | (b << (i * j))), t);
        }
    }
    for (std::uint64_t t = 0; t < tile_count; ++t)
        if (parent[t] == -2) throw std::logic_error("counterexample: covering tree not spanning");

    // Realize each tree edge as a lamplighter path inside F_n and remove it.
    VertexSubset removed(w.graph);
    std::uint64_t max_path = 0;
    std::vector<Vertex> path;
    auto commit = [&](std::vector<Vertex>& p) {
        max_path = std::max<std::uint64_t>(max_path, p.size());
        if (p.size() > 8 * std::uint64_t{j} + 1)
            throw std::logic_error("counterexample: path exceeds 8j+1 vertices");
        for (Vertex v : p) removed.insert(v);
        p.clear();
    };

    for (std::uint64_t t = 0; t < tile_count; ++t) {
        const std::uint32_t i = static_cast<std::uint32_t>(t / tiles.reps);
        const std::uint64_t f0 = tiles.expand(i, t % tiles.reps);
        const std::int64_t par = parent[t];
        path.clear();
        if (par == static_cast<std::int64_t>(root)) {
            // Walk from the tile's picked element straight out of F_n.
            if (i == 0) {
                path.push_back(vertex_at(1, f0));
            } else {
                for (std::uint32_t z = n - j + 1; z <= n; ++z)
                    path.push_back(vertex_at(z, f0));
            }
            commit(path);
            continue;
        }
        // Orient the tree edge as lower layer -> upper layer.
        const std::uint32_t pi = static_cast<std::uint32_t>(par / tiles.reps);
        const std::uint64_t pf0 = tiles.expand(pi, static_cast<std::uint64_t>(par) % tiles.reps);
        const std::uint32_t lo = std::min(i, pi);
        const std::uint64_t flo = i < pi ? f0 : pf0;
        const std::uint64_t fhi = i < pi ? pf0 : f0;
        // Crossing data: b = upper rep's lamps on the lower block, a = lower
        // rep's lamps on the upper block.
        const std::uint64_t b_lamps = fhi & tiles.block_mask(lo);
        const std::uint64_t a_lamps = flo & tiles.block_mask(lo + 1);
        std::uint64_t lamps = flo;
        // Leg 1: sweep the lower block left to right setting b's lamps.
        for (std::uint32_t z = lo * j + 1; z <= (lo + 1) * j; ++z) {
            path.push_back(vertex_at(z, lamps));
            const std::uint64_t bit = std::uint64_t{1} << (z - 1);
            if (b_lamps & bit) {
                lamps |= bit;
                path.push_back(vertex_at(z, lamps));
            }
        }
        // Crossing into the upper tile.
        const std::uint32_t zc = (lo + 1) * j + 1;
        path.push_back(vertex_at(zc, lamps));
        // Leg 2: clear a's lamps walking right, then return to zc.
        std::uint64_t rem = a_lamps;
        const std::uint64_t bit_zc = std::uint64_t{1} << (zc - 1);
        if (rem & bit_zc) {
            lamps &= ~bit_zc;
            rem &= ~bit_zc;
            path.push_back(vertex_at(zc, lamps));
        }
        if (rem) {
            const std::uint32_t zmax =
                static_cast<std::uint32_t>(std::bit_width(rem));  // site of top lamp
            for (std::uint32_t z = zc + 1; z <= zmax; ++z) {
                const std::uint64_t bit = std::uint64_t{1} << (z - 1);
                path.push_back(vertex_at(z, lamps));
                if (rem & bit) {
                    lamps &= ~bit;
                    path.push_back(vertex_at(z, lamps));
                }
            }
            for (std::uint32_t z = zmax - 1; z >= zc; --z) path.push_back(vertex_at(z, lamps));
        }
        commit(path);
    }

    // F_{n;j} = F_n minus the removed family.
    out.fnj = VertexSubset(w.graph);
    for (Vertex v : w.core.members())
        if (!removed.contains(v)) out.fnj.insert(v);

    CounterexampleReport& rep = out.report;
    rep.n = n;
    rep.j = j;
    rep.fn_size = w.core.size();
    rep.fn_boundary = edge_boundary_size(w.core);
    rep.translates = tile_count;
    rep.tree_edges = tile_count;  // one parent edge per tile
    rep.removed = removed.size();
    rep.max_path_len = max_path;
    rep.fnj_size = out.fnj.size();
    rep.fnj_boundary = edge_boundary_size(out.fnj);
    rep.size_ratio = static_cast<double>(rep.fnj_size) / static_cast<double>(rep.fn_size);
    rep.boundary_ratio = static_cast<double>(rep.fnj_boundary) / static_cast<double>(masks);
    rep.isoperimetric_ratio =
        static_cast<double>(rep.fnj_boundary) / static_cast<double>(rep.fnj_size);

    // Inner radius of F_{n;j} by complement BFS.
    {
        const auto dist = complement_distance(w.graph, out.fnj);
        std::uint32_t inr = 0;
        for (Vertex v = 0; v < w.graph.vertex_count(); ++v)
            if (out.fnj.contains(v)) inr = std::max(inr, dist[v]);
        if (inr == 0) throw std::logic_error("counterexample: complement BFS failed");
        rep.fnj_inradius = inr - 1;
    }

    // The complement of F_{n;j} must be connected: every removed vertex has
    // to reach the window margin through non-F_{n;j} vertices.
    {
        std::vector<char> seen(w.graph.vertex_count(), 0);
        std::deque<Vertex> bfs;
        for (Vertex v = 0; v < w.graph.vertex_count(); ++v)
            if (!w.core.contains(v)) {
                seen[v] = 1;
                bfs.push_back(v);
            }
        while (!bfs.empty()) {
            const Vertex v = bfs.front();
            bfs.pop_front();
            for (Vertex u : w.graph.neighbors(v))
                if (!seen[u] && removed.contains(u)) {
                    seen[u] = 1;
                    bfs.push_back(u);
                }
        }
        rep.complement_connected = true;
        for (Vertex v = 0; v < w.graph.vertex_count(); ++v)
            if (removed.contains(v) && !seen[v]) rep.complement_connected = false;
    }

    // Diameter of one tile (the all-off representative of layer 0).
    {
        std::vector<Vertex> tile;
        for (std::uint32_t z = 1; z <= j; ++z)
            for (std::uint64_t m = 0; m < (std::uint64_t{1} << j); ++m)
                tile.push_back(vertex_at(z, m));
        VertexSubset T(w.graph, tile);
        std::vector<std::int64_t> d(w.graph.vertex_count());
        std::uint32_t diam = 0;
        for (Vertex v : tile) diam = std::max(diam, ecc_in_set(w.graph, T, v, d).first);
        rep.translate_diameter = diam;
    }

    return out;
}

}  // namespace graphiso
