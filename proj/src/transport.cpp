#include "graphiso/transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphiso/spectral.hpp"

namespace graphiso {

using Rational = boost::multiprecision::cpp_rational;

// ------------------------------- measures ----------------------------------

void Measure::add(Vertex v, double mass) {
    auto [it, inserted] = entries_.try_emplace(v, mass);
    if (!inserted) it->second += mass;
    if (it->second == 0.0) entries_.erase(it);
}

double Measure::value(Vertex v) const {
    auto it = entries_.find(v);
    return it == entries_.end() ? 0.0 : it->second;
}

double Measure::total() const {
    KahanSum s;
    for (const auto& [v, x] : entries_) s.add(x);
    return s.value();
}

double Measure::mass() const {
    KahanSum s;
    for (const auto& [v, x] : entries_) s.add(std::abs(x));
    return s.value();
}

Measure Measure::dirac(Vertex v, double mass) {
    Measure m;
    m.add(v, mass);
    return m;
}

Measure Measure::from_function(const VertexFunction& f) {
    Measure m;
    for (Vertex v = 0; v < f.size(); ++v)
        if (f[v] != 0.0) m.add(v, f[v]);
    return m;
}

Measure operator+(Measure a, const Measure& b) {
    for (const auto& [v, x] : b.entries_) a.add(v, x);
    return a;
}

Measure operator-(Measure a, const Measure& b) {
    for (const auto& [v, x] : b.entries_) a.add(v, -x);
    return a;
}

std::pair<Measure, Measure> split_measure(const Measure& pi, double tol) {
    if (std::abs(pi.total()) > tol * std::max(1.0, pi.mass()))
        throw std::invalid_argument("split_measure: measure does not sum to zero");
    Measure plus, minus;
    for (const auto& [v, x] : pi.entries()) {
        if (x > 0.0) plus.add(v, x);
        else minus.add(v, -x);
    }
    return {plus, minus};
}

// ------------------------------- patterns ----------------------------------

TransportPattern make_pattern(EdgeFunction tau, Measure source, Measure target) {
    const FiniteGraph& g = tau.host();
    VertexFunction div = divergence(tau);
    double tau_max = 0.0;
    for (double x : tau.values()) tau_max = std::max(tau_max, std::abs(x));
    const double scale =
        std::max({1.0, tau_max * g.max_degree(), source.mass() + target.mass()});
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const double want = target.value(v) - source.value(v);
        if (std::abs(div[v] - want) > 1e-12 * scale)
            throw std::logic_error("make_pattern: divergence(tau) != target - source at vertex " +
                                   std::to_string(v));
    }
    TransportPattern t;
    t.tau = std::move(tau);
    t.source = std::move(source);
    t.target = std::move(target);
    return t;
}

PairingBound pairing_bound(const VertexFunction& f, const TransportPattern& t, double p) {
    PairingBound out;
    KahanSum diff;
    for (const auto& [v, x] : t.target.entries()) diff.add(f[v] * x);
    for (const auto& [v, x] : t.source.entries()) diff.add(-f[v] * x);
    out.exact_diff = diff.value();
    EdgeFunction grad = gradient(f);
    out.gradient_pairing = pairing(grad, t.tau);
    out.bound = lp_norm(grad, p) * lp_norm(t.tau, conjugate_exponent(p));
    double fmax = 0.0;
    for (double x : f.values()) fmax = std::max(fmax, std::abs(x));
    const double scale = std::max(1.0, fmax * (t.source.mass() + t.target.mass()));
    out.holds = std::abs(out.exact_diff - out.gradient_pairing) <= 1e-9 * scale &&
                out.exact_diff <= out.bound + 1e-9 * scale;
    return out;
}

TransportPattern path_pattern(const FiniteGraph& g, const std::vector<Vertex>& path,
                              double mass) {
    if (path.empty()) throw std::invalid_argument("path_pattern: empty path");
    EdgeFunction tau(g);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (!g.has_edge(path[i], path[i + 1]))
            throw std::invalid_argument("path_pattern: vertices " + std::to_string(path[i]) +
                                        " and " + std::to_string(path[i + 1]) +
                                        " are not adjacent");
        tau.add(path[i], path[i + 1], mass);
    }
    return make_pattern(std::move(tau), Measure::dirac(path.front(), mass),
                        Measure::dirac(path.back(), mass));
}

// --------------------------- potential patterns ----------------------------

namespace {

// CG for the divergence-form operator (1/d) L on the induced graph, with
// the zero-sum constraint re-imposed every iteration (kernel = constants).
struct InducedSolve {
    std::vector<double> h;
    double residual = 0.0;
    std::uint32_t iterations = 0;
};

void apply_div_grad_scaled(const FiniteGraph& g, double inv_d, const std::vector<double>& x,
                           std::vector<double>& out) {
    const Vertex n = g.vertex_count();
    out.assign(n, 0.0);
    for (Vertex v = 0; v < n; ++v) {
        double acc = 0.0;
        for (Vertex u : g.neighbors(v)) acc += x[v] - x[u];
        out[v] = acc * inv_d;
    }
}

void project_mean(std::vector<double>& x) {
    KahanSum s;
    for (double v : x) s.add(v);
    const double mean = s.value() / static_cast<double>(x.size());
    for (double& v : x) v -= mean;
}

InducedSolve solve_potential(const FiniteGraph& g, const std::vector<double>& b, double d) {
    const Vertex n = g.vertex_count();
    const double inv_d = 1.0 / d;
    InducedSolve out;
    out.h.assign(n, 0.0);
    std::vector<double> r = b, pdir, ap(n);
    project_mean(r);
    pdir = r;
    double rr = 0.0, bnorm = 0.0;
    for (Vertex i = 0; i < n; ++i) {
        rr += r[i] * r[i];
        bnorm += b[i] * b[i];
    }
    bnorm = std::sqrt(bnorm);
    if (bnorm == 0.0) return out;
    const double target = 1e-13 * bnorm;
    const std::uint32_t max_iters = 20 * n + 200;
    while (out.iterations < max_iters && std::sqrt(rr) > target) {
        apply_div_grad_scaled(g, inv_d, pdir, ap);
        double pap = 0.0;
        for (Vertex i = 0; i < n; ++i) pap += pdir[i] * ap[i];
        if (pap <= 0.0) break;
        const double alpha = rr / pap;
        for (Vertex i = 0; i < n; ++i) {
            out.h[i] += alpha * pdir[i];
            r[i] -= alpha * ap[i];
        }
        project_mean(r);
        double rr2 = 0.0;
        for (Vertex i = 0; i < n; ++i) rr2 += r[i] * r[i];
        const double beta = rr2 / rr;
        rr = rr2;
        for (Vertex i = 0; i < n; ++i) pdir[i] = r[i] + beta * pdir[i];
        ++out.iterations;
    }
    out.residual = std::sqrt(rr) / bnorm;
    project_mean(out.h);
    return out;
}

// tau = (1/d) grad h on the intra-F edges, as a host edge function.
EdgeFunction lift_gradient(const FiniteGraph& host, const InducedSubgraph& ind,
                           const std::vector<double>& h, double d) {
    EdgeFunction tau(host);
    const FiniteGraph& ig = ind.graph;
    for (Vertex i = 0; i < ig.vertex_count(); ++i)
        for (Vertex jn : ig.neighbors(i))
            if (i < jn)
                tau.set(ind.to_host[i], ind.to_host[jn], (h[jn] - h[i]) / d);
    return tau;
}

}  // namespace

PotentialPattern potential_pattern(const FiniteGraph& host, const VertexSubset& F,
                                   const Measure& load, double p, double ambient_degree) {
    if (F.empty()) throw std::invalid_argument("potential_pattern: empty set");
    if (ambient_degree <= 0.0)
        throw std::invalid_argument("potential_pattern: ambient degree must be positive");
    InducedSubgraph ind = induced_subgraph(F);
    if (!ind.graph.is_connected())
        throw std::invalid_argument("potential_pattern: induced graph on F is disconnected");
    std::vector<std::int64_t> to_induced(host.vertex_count(), -1);
    for (Vertex i = 0; i < ind.to_host.size(); ++i) to_induced[ind.to_host[i]] = i;

    std::vector<double> b(ind.graph.vertex_count(), 0.0);
    for (const auto& [v, x] : load.entries()) {
        if (to_induced[v] < 0)
            throw std::invalid_argument("potential_pattern: load supported outside F");
        b[static_cast<std::size_t>(to_induced[v])] = x;
    }
    if (std::abs(load.total()) > 1e-9 * std::max(1.0, load.mass()))
        throw std::invalid_argument("potential_pattern: load does not sum to zero");

    InducedSolve sol = solve_potential(ind.graph, b, ambient_degree);
    if (sol.residual > 1e-10)
        throw std::runtime_error("potential_pattern: CG did not converge, residual " +
                                 std::to_string(sol.residual));

    PotentialPattern out;
    EdgeFunction tau = lift_gradient(host, ind, sol.h, ambient_degree);
    auto [plus, minus] = split_measure(load);
    out.pattern = make_pattern(std::move(tau), std::move(minus), std::move(plus));
    out.residual = sol.residual;
    out.iterations = sol.iterations;
    out.tau_norm = lp_norm(out.pattern.tau, p);
    std::vector<double> load_vals;
    load_vals.reserve(load.entries().size());
    for (const auto& [v, x] : load.entries()) load_vals.push_back(x);
    out.load_norm = lp_norm(load_vals, p);
    out.lambda_p = lambda_p_divergence_estimate(ind.graph, p, ambient_degree, 16).value;
    out.norm_bound = ambient_degree / out.lambda_p * out.load_norm;
    return out;
}

// ------------------------------ Foelner radii ------------------------------

namespace {

std::uint32_t constant_ambient_degree(const Window& w) {
    const Vertex n = w.graph.vertex_count();
    const std::uint32_t d = w.ambient_degree(0);
    for (Vertex v = 1; v < n; ++v)
        if (w.ambient_degree(v) != d)
            throw std::invalid_argument("folner_radius: ambient graph is not regular");
    return d;
}

bool window_truncated(const Window& w) {
    for (Vertex v = 0; v < w.graph.vertex_count(); ++v)
        if (w.graph.degree(v) < w.ambient_degree(v)) return true;
    return false;
}

}  // namespace

std::optional<FolnerRadiusResult> folner_radius(const Window& w, const VertexSubset& F,
                                                double eps, std::uint32_t max_r) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("folner_radius: eps must lie in (0,1)");
    const std::uint64_t boundary = edge_boundary_size(F);
    if (boundary == 0) throw std::invalid_argument("folner_radius: F has empty boundary");
    const std::uint32_t d = constant_ambient_degree(w);
    const bool truncated = window_truncated(w);

    const Vertex n = w.graph.vertex_count();
    const Rational eps_r(eps);  // dyadic, exact
    const Rational threshold = 1 - eps_r;
    std::vector<Rational> f(n, 0), next(n);
    for (Vertex v = 0; v < n; ++v)
        if (F.contains(v)) f[v] = 1;

    for (std::uint32_t r = 1; r <= max_r; ++r) {
        if (truncated && r > w.margin)
            throw ResourceError("folner_radius: walk step " + std::to_string(r) +
                                " exceeds the materialized margin " + std::to_string(w.margin));
        for (Vertex v = 0; v < n; ++v) {
            Rational acc = 0;
            for (Vertex u : w.graph.neighbors(v)) acc += f[u];
            next[v] = acc / d;
        }
        f.swap(next);
        Rational sup = 0;
        for (Vertex v = 0; v < n; ++v)
            if (f[v] > sup) sup = f[v];
        if (sup <= threshold) {
            FolnerRadiusResult out;
            out.r = r;
            // 2 r |dF| >= d eps |F|, compared exactly.
            out.lemma_holds =
                Rational(2) * r * boundary >= Rational(d) * eps_r * F.size();
            return out;
        }
    }
    return std::nullopt;
}

FolnerRecord eps0_r0(const Window& w, const VertexSubset& F, std::uint32_t max_r) {
    FolnerRecord rec;
    const std::uint32_t d = constant_ambient_degree(w);
    auto crosses = [&](double eps, std::optional<FolnerRadiusResult>& res) {
        res = folner_radius(w, F, eps, max_r);
        if (!res) return false;  // r effectively infinite: above 1/sqrt(eps)
        // r <= 1/sqrt(eps)  <=>  r^2 eps <= 1, exact in rationals.
        return Rational(res->r) * res->r * Rational(eps) <= 1;
    };

    std::size_t first_true = SIZE_MAX;
    for (int i = 1; i <= 40; ++i) {
        const double eps = std::ldexp(1.0, -i);
        std::optional<FolnerRadiusResult> res;
        const bool ok = crosses(eps, res);
        rec.eps_grid.push_back(eps);
        rec.r_of.push_back(res ? std::optional<std::uint32_t>(res->r) : std::nullopt);
        if (ok && first_true == SIZE_MAX) first_true = rec.eps_grid.size() - 1;
        // Grid is decreasing, so later points only get easier; record a few
        // past the crossing for the monotonicity check and stop.
        if (first_true != SIZE_MAX && rec.eps_grid.size() >= first_true + 4) break;
    }
    // Monotonicity of r_F along the (decreasing) grid prefix we computed.
    for (std::size_t i = 0; i + 1 < rec.r_of.size(); ++i)
        if (rec.r_of[i] && rec.r_of[i + 1] && *rec.r_of[i] < *rec.r_of[i + 1])
            rec.monotone = false;
    if (first_true == SIZE_MAX) return rec;  // no crossing within the grid

    double lo = rec.eps_grid[first_true];
    double hi = first_true == 0 ? 1.0 : rec.eps_grid[first_true - 1];
    for (int it = 0; it < 25; ++it) {
        const double mid = 0.5 * (lo + hi);
        std::optional<FolnerRadiusResult> res;
        if (crosses(mid, res)) lo = mid;
        else hi = mid;
    }
    rec.eps0 = lo;
    rec.eps_hi = hi;
    std::optional<FolnerRadiusResult> res;
    crosses(lo, res);
    rec.r0 = res ? res->r : 0;
    if (rec.r0 > 0) {
        const std::uint64_t boundary = edge_boundary_size(F);
        // r0^3 >= (d/2) |F| / |dF|, integer arithmetic.
        const auto r0 = static_cast<std::uint64_t>(rec.r0);
        rec.cube_bound_holds = 2 * r0 * r0 * r0 * boundary >= std::uint64_t{d} * F.size();
    }
    return rec;
}

// ------------------------ harmonic difference pipeline ---------------------

namespace {

// Multi-source BFS from F over the window graph; fills dist (0 on F) and a
// parent pointer toward F for every reached outside vertex.
void bfs_toward(const FiniteGraph& g, const VertexSubset& F, std::vector<std::uint32_t>& dist,
                std::vector<Vertex>& parent) {
    const Vertex n = g.vertex_count();
    dist.assign(n, UINT32_MAX);
    parent.assign(n, UINT32_MAX);
    std::deque<Vertex> queue;
    for (Vertex v = 0; v < n; ++v)
        if (F.contains(v)) {
            dist[v] = 0;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex u : g.neighbors(v))
            if (dist[u] == UINT32_MAX) {
                dist[u] = dist[v] + 1;
                parent[u] = v;
                queue.push_back(u);
            }
    }
}

std::vector<std::uint32_t> depth_in_set(const FiniteGraph& g, const VertexSubset& F) {
    // Distance to the complement, BFS layered inward; 0 outside F.
    const Vertex n = g.vertex_count();
    std::vector<std::uint32_t> dist(n, 0);
    std::vector<char> seen(n, 0);
    std::deque<Vertex> queue;
    for (Vertex v = 0; v < n; ++v) {
        if (!F.contains(v)) continue;
        for (Vertex u : g.neighbors(v))
            if (!F.contains(u)) {
                dist[v] = 1;
                seen[v] = 1;
                queue.push_back(v);
                break;
            }
    }
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex u : g.neighbors(v))
            if (F.contains(u) && !seen[u]) {
                seen[u] = 1;
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    return dist;
}

}  // namespace

HarmonicPipeline harmonic_difference_pipeline(const Window& w, const VertexSubset& F,
                                              Vertex v, Vertex w_vertex, double p,
                                              PipelineMode mode,
                                              const VertexFunction* test_f) {
    if (p < 2.0)
        throw std::invalid_argument("harmonic_difference_pipeline: requires p >= 2");
    const FiniteGraph& g = w.graph;
    if (!g.has_edge(v, w_vertex))
        throw std::invalid_argument("harmonic_difference_pipeline: v and w must be adjacent");
    if (!F.contains(v) || !F.contains(w_vertex))
        throw std::invalid_argument("harmonic_difference_pipeline: v and w must lie in F");
    const std::uint32_t d = constant_ambient_degree(w);
    const double q = conjugate_exponent(p);

    HarmonicPipeline out;
    PipelineReport& rep = out.report;
    rep.mode = mode;

    if (mode == PipelineMode::Radial) {
        const auto depth = depth_in_set(g, F);
        std::uint32_t inradius_p1 = 0;  // max depth = inradius + 1
        for (Vertex x = 0; x < g.vertex_count(); ++x)
            inradius_p1 = std::max(inradius_p1, depth[x]);
        if (inradius_p1 < 2)
            throw std::invalid_argument("harmonic_difference_pipeline: F has inradius 0");
        rep.r_steps = inradius_p1 - 2;  // r = inrad(F) - 1
        const std::uint32_t need = rep.r_steps + 1;
        if (depth[v] < need || depth[w_vertex] < need)
            throw std::invalid_argument(
                "harmonic_difference_pipeline: ball of radius " + std::to_string(rep.r_steps) +
                " around the endpoints leaves F (limiting depth " +
                std::to_string(std::min(depth[v], depth[w_vertex]) - 1) + ")");
    } else {
        FolnerRecord rec = eps0_r0(w, F);
        if (rec.r0 == 0)
            throw std::invalid_argument(
                "harmonic_difference_pipeline: no eps0/r0 crossing found for F");
        rep.r0 = rec.r0;
        rep.eps0 = rec.eps0;
        rep.r_steps = rec.r0 - 1;
        rep.escaped_l1_budget = (2.0 * rec.r0 + 1.0) / (double(rec.r0) * rec.r0);
    }

    // In Radial mode the ball precondition keeps all walk mass strictly
    // inside F, so truncation can never be reached; Folner mode may spill
    // into the collar and needs the margin to cover the steps taken.
    if (mode == PipelineMode::Folner && window_truncated(w) && rep.r_steps > w.margin)
        throw ResourceError("harmonic_difference_pipeline: " + std::to_string(rep.r_steps) +
                            " walk steps exceed the materialized margin");

    // a = P^r delta_v, b = P^r delta_w, iterated exactly on the window.
    std::vector<double> a(g.vertex_count(), 0.0), b(g.vertex_count(), 0.0);
    a[v] = 1.0;
    b[w_vertex] = 1.0;
    for (std::uint32_t step = 0; step < rep.r_steps; ++step) {
        a = ambient_walk_step(w, a);
        b = ambient_walk_step(w, b);
    }
    for (double x : b) rep.return_prob = std::max(rep.return_prob, x);

    std::vector<double> gdiff(g.vertex_count());
    for (Vertex x = 0; x < g.vertex_count(); ++x) gdiff[x] = a[x] - b[x];
    rep.g_norm = lp_norm(gdiff, p);
    rep.g_bound = 2.0 * std::pow(rep.return_prob, 1.0 / q);

    // Escaped mass is routed back into F along shortest paths; the entry
    // points absorb it, which is exactly the compensating mass drawn from
    // inside F.
    std::vector<std::uint32_t> dist;
    std::vector<Vertex> parent;
    bfs_toward(g, F, dist, parent);
    EdgeFunction tau_out(g);
    Measure load;
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
        if (gdiff[x] == 0.0) continue;
        if (F.contains(x)) {
            load.add(x, gdiff[x]);
            continue;
        }
        rep.escaped_mass += std::abs(gdiff[x]);
        if (dist[x] == UINT32_MAX)
            throw std::logic_error("harmonic_difference_pipeline: escaped mass unreachable");
        // Path from the entry point out to x carries the mass, so that the
        // divergence contribution is gdiff[x] (delta_x - delta_entry).
        Vertex cur = x;
        while (!F.contains(cur)) {
            tau_out.add(parent[cur], cur, gdiff[x]);
            cur = parent[cur];
        }
        load.add(cur, gdiff[x]);
    }

    InducedSubgraph ind = induced_subgraph(F);
    if (!ind.graph.is_connected())
        throw std::invalid_argument("harmonic_difference_pipeline: induced F disconnected");
    std::vector<std::int64_t> to_induced(g.vertex_count(), -1);
    for (Vertex i = 0; i < ind.to_host.size(); ++i) to_induced[ind.to_host[i]] = i;
    std::vector<double> rhs(ind.graph.vertex_count(), 0.0);
    for (const auto& [x, m] : load.entries()) rhs[static_cast<std::size_t>(to_induced[x])] = m;
    InducedSolve sol = solve_potential(ind.graph, rhs, d);
    if (sol.residual > 1e-10)
        throw std::runtime_error("harmonic_difference_pipeline: CG residual " +
                                 std::to_string(sol.residual));
    EdgeFunction tau_in = lift_gradient(g, ind, sol.h, d);

    rep.tau_in_norm = lp_norm(tau_in, p);
    rep.tau_out_norm = lp_norm(tau_out, p);
    rep.escaped_l1_cost = lp_norm(tau_out, 1.0);
    EdgeFunction tau_total(g);
    for (std::uint32_t e = 0; e < g.edge_count(); ++e)
        tau_total[e] = tau_in[e] + tau_out[e];
    rep.tau_total_norm = lp_norm(tau_total, p);

    Measure source = Measure::from_function(VertexFunction(g, b));
    Measure target = Measure::from_function(VertexFunction(g, a));
    out.pattern = make_pattern(std::move(tau_total), std::move(source), std::move(target));

    // Cheeger constant of the induced graph; exact on small sets only.
    if (ind.graph.vertex_count() <= 20) {
        auto c = cheeger_exact(ind.graph);
        rep.kappa1 = c.value;
        rep.kappa1_exact = true;
    } else {
        auto c = cheeger_heuristic(ind.graph);
        rep.kappa1 = c.value;
        rep.kappa1_exact = false;
    }
    const double pbar = std::max(p, q);
    const double common = 2.0 * d * double(d) * d / (rep.kappa1 * rep.kappa1) *
                          std::pow(rep.return_prob, 1.0 / q);
    rep.norm_bound = pbar * common;
    rep.norm_bound_q = q * common;
    rep.norm_bound_holds = rep.tau_total_norm <= rep.norm_bound * (1.0 + 1e-9);

    if (test_f) {
        auto pb = pairing_bound(*test_f, out.pattern, q);
        rep.test_diff = pb.exact_diff;
        rep.test_bound = pb.bound;
    }
    return out;
}

}  // namespace graphiso
